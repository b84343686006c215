#pragma once

#include <cstddef>
#include <vector>

#include "lazyrag/corpus.hpp"
#include "lazyrag/embedding.hpp"

namespace lazyrag {

struct IndexEntry {
  Chunk chunk;
  EmbeddingVector embedding;
};

struct RetrievalResult {
  Chunk chunk;
  double score = 0.0;  // cosine similarity against the query
  int rank = 0;        // 1-based, best first
};

// Exact flat inner-product index: every search scores all entries, so
// results are reproducible and never approximate. The index is built
// once and immutable afterwards; concurrent searches are safe.
class VectorIndex {
public:
  // Takes pre-embedded entries; all vectors must match `dimension` and
  // chunk ids must be unique.
  VectorIndex(std::size_t dimension, std::vector<IndexEntry> entries);

  // Embeds chunk texts in one batch and keeps the chunk order.
  static VectorIndex build(const std::vector<Chunk>& chunks, Embedder& embedder);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<IndexEntry>& entries() const { return entries_; }

  // Top-k by descending score; ties broken by insertion order. Returns
  // fewer than k results only when the index holds fewer entries.
  // Scoring is OpenMP-parallel; the ranking is identical to
  // search_serial because per-entry scores are computed independently.
  std::vector<RetrievalResult> search(const EmbeddingVector& query, int k = 3) const;

  // Plain reference scan kept for tests and benchmarks.
  std::vector<RetrievalResult> search_serial(const EmbeddingVector& query, int k = 3) const;

private:
  void check_query(const EmbeddingVector& query, int k) const;
  std::vector<RetrievalResult> select_top_k(const std::vector<double>& scores, int k) const;

  std::size_t dimension_;
  std::vector<IndexEntry> entries_;
};

}  // namespace lazyrag
