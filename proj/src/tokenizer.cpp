#include "lazyrag/tokenizer.hpp"

#include <cctype>

namespace lazyrag {

std::vector<Token> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t b = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back(Token{std::string(text.substr(b, i - b)), b, i});
  }
  return out;
}

}  // namespace lazyrag
