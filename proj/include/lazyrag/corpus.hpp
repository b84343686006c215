#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazyrag/tokenizer.hpp"

namespace lazyrag {

struct Document {
  std::string id;
  std::optional<std::string> title;
  std::string text;
};

// The cheap always-in-prompt context: the leading sentences of every
// paragraph of one document, joined into a single block.
struct SummaryContext {
  std::string doc_id;
  std::string text;
};

// Half-open token range [begin, end) into the document's token stream.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

struct Chunk {
  std::string doc_id;
  std::size_t index = 0;  // position within the document, 0-based
  std::string text;       // exact byte slice of the source document
  TokenSpan token_span;

  std::string id() const { return doc_id + "#" + std::to_string(index); }
};

struct ChunkingParams {
  std::size_t chunk_tokens = 100;
  std::size_t overlap_tokens = 20;
};

// Paragraphs are separated by one or more blank (or whitespace-only)
// lines; each returned paragraph is trimmed and nonempty.
std::vector<std::string> split_paragraphs(std::string_view text);

// Sentence boundaries sit after runs of . ! ? that are followed by
// whitespace or end-of-text. A bare period attached to a known
// abbreviation ("dr.", "e.g.", ...) does not end a sentence. Trailing
// text without a terminator counts as a final sentence.
std::vector<std::string> split_sentences(std::string_view paragraph);

// First `sentences_per_paragraph` sentences of every paragraph, joined
// with single spaces. Paragraphs with fewer sentences contribute all of
// them. Running the result through again is a no-op for a document that
// already fits in one paragraph's quota.
SummaryContext summarize(const Document& doc, std::size_t sentences_per_paragraph = 2);

// Sliding token windows: each chunk takes `chunk_tokens` tokens and
// consecutive chunks share exactly `overlap_tokens`. The final window is
// the one that reaches the last token, so it may be shorter. Chunk text
// is the byte slice spanning its tokens. Requires overlap < chunk size.
std::vector<Chunk> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                  const ChunkingParams& params = {});

// Newline-delimited JSON, one {"id", "title"?, "text"} object per line.
// Blank lines are skipped. Malformed lines raise ParseError naming the
// line number; duplicate ids raise ValidationError.
std::vector<Document> load_corpus(std::istream& in, const std::string& source_name = "<corpus>");
std::vector<Document> load_corpus_file(const std::string& path);

}  // namespace lazyrag
