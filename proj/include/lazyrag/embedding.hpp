#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lazyrag {

// Dense unit-length vector; with every stored vector L2-normalized, the
// inner product doubles as cosine similarity.
struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dimension() const { return values.size(); }

  bool operator==(const EmbeddingVector&) const = default;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);

// Scales to unit L2 norm; a (near-)zero vector falls back to the fixed
// unit vector e0 so downstream similarity stays well defined.
void l2_normalize(std::vector<float>& values);

class Embedder {
public:
  virtual ~Embedder() = default;

  // May be 0 for remote embedders until the first response pins it.
  virtual std::size_t dimension() const = 0;

  // One vector per input text, same order. Inputs must be nonempty.
  virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) = 0;

  EmbeddingVector embed(const std::string& text);
};

// Deterministic offline embedder: signed feature hashing over
// lowercased whitespace tokens (FNV-1a 64-bit), then L2 normalization.
// The same text always maps to bit-identical vectors.
class HashingEmbedder final : public Embedder {
public:
  explicit HashingEmbedder(std::size_t dimension = 64);

  std::size_t dimension() const override { return dimension_; }
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override;

  // Plain loop counterpart of embed_batch, kept as the reference
  // implementation for tests and benchmarks.
  std::vector<EmbeddingVector> embed_batch_serial(std::span<const std::string> texts) const;

  EmbeddingVector embed_one(const std::string& text) const;

private:
  std::size_t dimension_;
};

}  // namespace lazyrag
