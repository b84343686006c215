#include "lazyrag/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "lazyrag/errors.hpp"
#include "lazyrag/tokenizer.hpp"
#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.dimension()) +
                          " vs " + std::to_string(b.dimension()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    acc += static_cast<double>(a.values[i]) * static_cast<double>(b.values[i]);
  }
  return acc;
}

void l2_normalize(std::vector<float>& values) {
  if (values.empty()) throw ValidationError("cannot normalize an empty vector");
  double norm_sq = 0.0;
  for (float v : values) norm_sq += static_cast<double>(v) * static_cast<double>(v);
  const double norm = std::sqrt(norm_sq);
  if (norm < 1e-12) {
    for (float& v : values) v = 0.0f;
    values[0] = 1.0f;
    return;
  }
  for (float& v : values) v = static_cast<float>(static_cast<double>(v) / norm);
}

EmbeddingVector Embedder::embed(const std::string& text) {
  const std::string texts[1] = {text};
  return embed_batch(std::span<const std::string>(texts, 1)).front();
}

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be >= 1");
}

EmbeddingVector HashingEmbedder::embed_one(const std::string& text) const {
  if (text.empty()) throw ValidationError("cannot embed empty text");
  std::vector<double> acc(dimension_, 0.0);
  WhitespaceTokenizer tokenizer;
  for (const Token& token : tokenizer.tokenize(text)) {
    const std::uint64_t h = fnv1a64(lowercase_ascii(token.text));
    const std::size_t bucket = h % dimension_;
    const double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
    acc[bucket] += sign;
  }
  EmbeddingVector out;
  out.values.assign(acc.begin(), acc.end());
  l2_normalize(out.values);
  return out;
}

std::vector<EmbeddingVector> HashingEmbedder::embed_batch(
    std::span<const std::string> texts) {
  // Validate up front: an exception must not escape the parallel loop.
  for (const std::string& text : texts) {
    if (text.empty()) throw ValidationError("cannot embed empty text");
  }
  std::vector<EmbeddingVector> out(texts.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(texts.size()); ++i) {
    out[i] = embed_one(texts[i]);
  }
  return out;
}

std::vector<EmbeddingVector> HashingEmbedder::embed_batch_serial(
    std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(embed_one(text));
  return out;
}

}  // namespace lazyrag
