#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lazyrag {

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offset of the first byte, inclusive
  std::size_t end = 0;    // byte offset one past the last byte

  bool operator==(const Token&) const = default;
};

class Tokenizer {
public:
  virtual ~Tokenizer() = default;
  virtual std::vector<Token> tokenize(std::string_view text) const = 0;

  std::size_t count(std::string_view text) const { return tokenize(text).size(); }
};

// Splits on runs of ASCII whitespace. Offsets are byte positions into
// the original text, so a token range can be cut back out of the source
// without re-joining tokens.
class WhitespaceTokenizer final : public Tokenizer {
public:
  std::vector<Token> tokenize(std::string_view text) const override;
};

}  // namespace lazyrag
