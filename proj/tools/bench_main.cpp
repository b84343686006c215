// Microbenchmark comparing the OpenMP kernels against their serial
// reference implementations: batch embedding and flat index search.
// Both paths must produce identical results; the benchmark verifies
// that before it reports timings.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "lazyrag/corpus.hpp"
#include "lazyrag/embedding.hpp"
#include "lazyrag/index.hpp"

namespace {

using namespace lazyrag;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Deterministic synthetic corpus: pseudo-words drawn from a fixed seed.
std::vector<std::string> make_texts(std::size_t count, std::size_t words_per_text,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const char* kSyllables[] = {"ka", "ro", "mi", "ta", "ne", "su", "lo", "ve",
                                     "da", "pi", "zu", "fe", "go", "ri", "ma", "tu"};
  std::vector<std::string> texts;
  texts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string text;
    for (std::size_t w = 0; w < words_per_text; ++w) {
      if (w > 0) text += ' ';
      const std::size_t syllables = 2 + rng() % 3;
      for (std::size_t s = 0; s < syllables; ++s) text += kSyllables[rng() % 16];
    }
    texts.push_back(std::move(text));
  }
  return texts;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t chunk_count = 20000;
  std::size_t words_per_chunk = 40;
  std::size_t query_count = 200;
  int k = 3;
  int repeats = 3;

  CLI::App app{"serial vs OpenMP kernel benchmark"};
  app.add_option("--chunks", chunk_count, "synthetic chunks to embed and index");
  app.add_option("--words", words_per_chunk, "words per synthetic chunk");
  app.add_option("--queries", query_count, "searches to run");
  app.add_option("--k", k, "results per search");
  app.add_option("--repeat", repeats, "timing repetitions (best run wins)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("openmp: enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled (serial build)\n");
#endif

  const std::vector<std::string> texts = make_texts(chunk_count, words_per_chunk, 42);
  const std::vector<std::string> queries = make_texts(query_count, 8, 1337);
  HashingEmbedder embedder;

  // --- batch embedding ---
  double serial_embed_s = 1e100;
  double parallel_embed_s = 1e100;
  std::vector<EmbeddingVector> serial_vectors;
  std::vector<EmbeddingVector> parallel_vectors;
  for (int r = 0; r < repeats; ++r) {
    Clock::time_point start = Clock::now();
    serial_vectors = embedder.embed_batch_serial(texts);
    serial_embed_s = std::min(serial_embed_s, seconds_since(start));

    start = Clock::now();
    parallel_vectors = embedder.embed_batch(texts);
    parallel_embed_s = std::min(parallel_embed_s, seconds_since(start));
  }
  if (serial_vectors != parallel_vectors) {
    std::fprintf(stderr, "FAIL: serial and parallel embeddings differ\n");
    return 1;
  }

  // --- index search ---
  std::vector<Chunk> chunks;
  chunks.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    chunks.push_back(Chunk{"bench", i, texts[i], TokenSpan{0, words_per_chunk}});
  }
  const VectorIndex index = VectorIndex::build(chunks, embedder);
  std::vector<EmbeddingVector> query_vectors;
  query_vectors.reserve(queries.size());
  for (const std::string& query : queries) query_vectors.push_back(embedder.embed(query));

  double serial_search_s = 1e100;
  double parallel_search_s = 1e100;
  for (int r = 0; r < repeats; ++r) {
    Clock::time_point start = Clock::now();
    for (const EmbeddingVector& query : query_vectors) {
      (void)index.search_serial(query, k);
    }
    serial_search_s = std::min(serial_search_s, seconds_since(start));

    start = Clock::now();
    for (const EmbeddingVector& query : query_vectors) {
      (void)index.search(query, k);
    }
    parallel_search_s = std::min(parallel_search_s, seconds_since(start));
  }
  for (const EmbeddingVector& query : query_vectors) {
    const auto a = index.search_serial(query, k);
    const auto b = index.search(query, k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].chunk.id() != b[i].chunk.id() || a[i].score != b[i].score) {
        std::fprintf(stderr, "FAIL: serial and parallel rankings differ\n");
        return 1;
      }
    }
  }

  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial (s)", "openmp (s)", "speedup");
  std::printf("%-22s %12.4f %12.4f %8.2fx\n", "embed_batch", serial_embed_s,
              parallel_embed_s, serial_embed_s / parallel_embed_s);
  std::printf("%-22s %12.4f %12.4f %8.2fx\n", "index_search", serial_search_s,
              parallel_search_s, serial_search_s / parallel_search_s);
  std::printf("results: identical across implementations\n");
  return 0;
}
