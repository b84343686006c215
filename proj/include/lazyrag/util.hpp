#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lazyrag {

// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

// ASCII-only lowercasing; bytes outside A-Z pass through untouched.
std::string lowercase_ascii(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Fixed formatting used by every CSV writer: four decimal places,
// non-finite values spelled "inf"/"-inf"/"nan" so files stay stable
// across platforms.
std::string fixed4(double v);

// Reads a whole file; throws ParseError naming the path when it cannot
// be opened.
std::string read_file(const std::string& path);

void write_file(const std::string& path, std::string_view content);

}  // namespace lazyrag
