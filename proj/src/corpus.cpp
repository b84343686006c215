#include "lazyrag/corpus.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "lazyrag/errors.hpp"
#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

bool is_sentence_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Lowercased abbreviations, including the trailing period, that keep a
// bare "." from closing a sentence.
const std::unordered_set<std::string>& abbreviation_words() {
  static const std::unordered_set<std::string> words = {
      "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.",
      "vs.", "etc.", "e.g.", "i.e.", "cf.", "al.", "fig.", "no.",
      "vol.", "dept.", "approx.",
  };
  return words;
}

bool ends_with_abbreviation(std::string_view paragraph, std::size_t period_pos) {
  std::size_t word_begin = period_pos;
  while (word_begin > 0 && !is_space(paragraph[word_begin - 1])) --word_begin;
  std::string word =
      lowercase_ascii(paragraph.substr(word_begin, period_pos - word_begin + 1));
  return abbreviation_words().count(word) > 0;
}

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  std::size_t pos = 0;
  auto flush = [&] {
    std::string_view trimmed = trim(current);
    if (!trimmed.empty()) out.emplace_back(trimmed);
    current.clear();
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    if (trim(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current += '\n';
      current += line;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();
  return out;
}

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> out;
  const std::size_t n = paragraph.size();
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_sentence_terminal(paragraph[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;  // last terminal of the punctuation run
    while (run_end + 1 < n && is_sentence_terminal(paragraph[run_end + 1])) ++run_end;
    const bool at_end = run_end + 1 >= n;
    const bool before_space = !at_end && is_space(paragraph[run_end + 1]);
    bool boundary = at_end || before_space;
    // Only a lone "." can belong to an abbreviation; "?!" runs always end.
    if (boundary && run_end == i && paragraph[i] == '.' &&
        ends_with_abbreviation(paragraph, i)) {
      boundary = false;
    }
    if (boundary) {
      std::string_view sentence = trim(paragraph.substr(begin, run_end + 1 - begin));
      if (!sentence.empty()) out.emplace_back(sentence);
      begin = run_end + 1;
    }
    i = run_end + 1;
  }
  if (begin < n) {
    std::string_view tail = trim(paragraph.substr(begin));
    if (!tail.empty()) out.emplace_back(tail);
  }
  return out;
}

SummaryContext summarize(const Document& doc, std::size_t sentences_per_paragraph) {
  if (sentences_per_paragraph == 0) {
    throw std::invalid_argument("sentences_per_paragraph must be >= 1");
  }
  std::vector<std::string> picked;
  for (const std::string& paragraph : split_paragraphs(doc.text)) {
    std::vector<std::string> sentences = split_sentences(paragraph);
    const std::size_t take = std::min(sentences.size(), sentences_per_paragraph);
    for (std::size_t i = 0; i < take; ++i) picked.push_back(std::move(sentences[i]));
  }
  return SummaryContext{doc.id, join(picked, " ")};
}

std::vector<Chunk> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                  const ChunkingParams& params) {
  if (params.chunk_tokens == 0) {
    throw std::invalid_argument("chunk_tokens must be >= 1");
  }
  if (params.overlap_tokens >= params.chunk_tokens) {
    throw std::invalid_argument("overlap_tokens must be smaller than chunk_tokens");
  }
  const std::vector<Token> tokens = tokenizer.tokenize(doc.text);
  std::vector<Chunk> chunks;
  if (tokens.empty()) return chunks;

  const std::size_t stride = params.chunk_tokens - params.overlap_tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(start + params.chunk_tokens, tokens.size());
    const std::size_t byte_begin = tokens[start].begin;
    const std::size_t byte_end = tokens[end - 1].end;
    chunks.push_back(Chunk{doc.id, chunks.size(),
                           doc.text.substr(byte_begin, byte_end - byte_begin),
                           TokenSpan{start, end}});
    if (end == tokens.size()) break;
    start += stride;
  }
  return chunks;
}

std::vector<Document> load_corpus(std::istream& in, const std::string& source_name) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const std::string where = source_name + " line " + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!record.is_object()) throw ParseError(where + ": record must be a JSON object");
    if (!record.contains("id") || !record["id"].is_string() ||
        record["id"].get<std::string>().empty()) {
      throw ParseError(where + ": missing or empty string field 'id'");
    }
    if (!record.contains("text") || !record["text"].is_string() ||
        record["text"].get<std::string>().empty()) {
      throw ParseError(where + ": missing or empty string field 'text'");
    }
    Document doc;
    doc.id = record["id"].get<std::string>();
    doc.text = record["text"].get<std::string>();
    if (record.contains("title")) {
      if (!record["title"].is_string()) throw ParseError(where + ": 'title' must be a string");
      doc.title = record["title"].get<std::string>();
    }
    if (!seen_ids.insert(doc.id).second) {
      throw ValidationError("duplicate document id: " + doc.id);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus: " + path);
  return load_corpus(in, path);
}

}  // namespace lazyrag
