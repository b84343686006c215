#pragma once

#include <cstddef>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "lazyrag/embedding.hpp"
#include "lazyrag/lm.hpp"

namespace lazyrag {

// Remote embedding service speaking JSON over HTTP:
//   request  {"texts": ["...", ...]}
//   response {"vectors": [[...], ...]}
// Vectors are L2-normalized on arrival, so servers may return raw
// embeddings. The dimension is discovered from the first response and
// later responses must match it. Connection failures, timeouts, and 5xx
// raise retryable TransportError; other 4xx raise non-retryable ones.
class HttpEmbedder final : public Embedder {
public:
  explicit HttpEmbedder(std::string url, int timeout_ms = 30000);

  std::size_t dimension() const override;
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override;

private:
  std::string base_;
  std::string path_;
  int timeout_ms_;
  mutable std::mutex mutex_;
  std::size_t dimension_ = 0;  // 0 until the first response pins it
};

// Remote model speaking JSON over HTTP:
//   request  {"prompt": "...", "max_tokens": N, "logprobs": K}
//   response {"tokens": ["...", ...],
//             "top_logprobs": [[{"token": "...", "logprob": -0.1}, ...], ...]}
// Each step's top-K logprobs are exponentiated into probabilities and
// the unlisted tail becomes the residual mass of a truncated
// distribution. The emitted token must be the argmax of its step
// (greedy decoding); responses violating that are rejected.
class HttpLanguageModel final : public LanguageModel {
public:
  explicit HttpLanguageModel(std::string url, int top_logprobs = 20, int timeout_ms = 30000);

  std::vector<TokenStep> generate(const GenerationRequest& request) override;

private:
  std::string base_;
  std::string path_;
  int top_logprobs_;
  int timeout_ms_;
};

// Splits "http://host:port/some/path" into the client base and the
// request path ("/" when absent). Only http:// and https:// are
// accepted.
std::pair<std::string, std::string> split_url(const std::string& url);

}  // namespace lazyrag
