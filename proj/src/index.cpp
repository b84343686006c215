#include "lazyrag/index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "lazyrag/errors.hpp"

namespace lazyrag {

VectorIndex::VectorIndex(std::size_t dimension, std::vector<IndexEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("cannot build an empty index");
  std::unordered_set<std::string> ids;
  for (const IndexEntry& entry : entries_) {
    if (entry.embedding.dimension() != dimension_) {
      throw ValidationError("dimension mismatch: entry '" + entry.chunk.id() + "' has " +
                            std::to_string(entry.embedding.dimension()) +
                            " dimensions, index expects " + std::to_string(dimension_));
    }
    if (!ids.insert(entry.chunk.id()).second) {
      throw ValidationError("duplicate chunk id: " + entry.chunk.id());
    }
  }
}

VectorIndex VectorIndex::build(const std::vector<Chunk>& chunks, Embedder& embedder) {
  if (chunks.empty()) throw ValidationError("cannot build an empty index");
  std::vector<std::string> texts;
  texts.reserve(chunks.size());
  for (const Chunk& chunk : chunks) texts.push_back(chunk.text);

  std::vector<EmbeddingVector> vectors = embedder.embed_batch(texts);
  if (vectors.size() != chunks.size()) {
    throw ValidationError("embedder returned " + std::to_string(vectors.size()) +
                          " vectors for " + std::to_string(chunks.size()) + " chunks");
  }
  std::vector<IndexEntry> entries;
  entries.reserve(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    entries.push_back(IndexEntry{chunks[i], std::move(vectors[i])});
  }
  const std::size_t dimension = entries.front().embedding.dimension();
  return VectorIndex(dimension, std::move(entries));
}

void VectorIndex::check_query(const EmbeddingVector& query, int k) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (query.dimension() != dimension_) {
    throw ValidationError("dimension mismatch: query has " +
                          std::to_string(query.dimension()) +
                          " dimensions, index expects " + std::to_string(dimension_));
  }
}

std::vector<RetrievalResult> VectorIndex::select_top_k(const std::vector<double>& scores,
                                                       int k) const {
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scores.size());
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  // Strict weak ordering: higher score first, earlier insertion wins ties,
  // so the selected prefix is fully deterministic.
  const auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), better);
  std::vector<RetrievalResult> results;
  results.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    results.push_back(RetrievalResult{entries_[order[r]].chunk, scores[order[r]],
                                      static_cast<int>(r) + 1});
  }
  return results;
}

std::vector<RetrievalResult> VectorIndex::search(const EmbeddingVector& query, int k) const {
  check_query(query, k);
  std::vector<double> scores(entries_.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(entries_.size()); ++i) {
    scores[i] = dot(entries_[i].embedding, query);
  }
  return select_top_k(scores, k);
}

std::vector<RetrievalResult> VectorIndex::search_serial(const EmbeddingVector& query,
                                                        int k) const {
  check_query(query, k);
  std::vector<double> scores(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    scores[i] = dot(entries_[i].embedding, query);
  }
  return select_top_k(scores, k);
}

}  // namespace lazyrag
