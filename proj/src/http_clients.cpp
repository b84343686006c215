#include "lazyrag/http_clients.hpp"

#include <cmath>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "lazyrag/errors.hpp"

namespace lazyrag {

namespace {

constexpr const char* kContentType = "application/json";

bool is_retryable_status(int status) {
  return status >= 500 || status == 408 || status == 429;
}

// Issues one POST and maps every transport-level failure onto
// TransportError; returns the response body on 2xx.
std::string post_json(const std::string& base, const std::string& path, int timeout_ms,
                      const std::string& body, const char* what_for) {
  httplib::Client client(base);
  client.set_connection_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
  client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
  client.set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);

  httplib::Result result = client.Post(path, body, kContentType);
  if (!result) {
    throw TransportError(std::string(what_for) + " request to " + base + path +
                             " failed: " + httplib::to_string(result.error()),
                         /*retryable=*/true);
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError(std::string(what_for) + " request to " + base + path +
                             " returned HTTP " + std::to_string(result->status),
                         is_retryable_status(result->status));
  }
  return result->body;
}

}  // namespace

std::pair<std::string, std::string> split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("invalid backend url (expected http://...): " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ValidationError("unsupported url scheme '" + scheme + "' in: " + url);
  }
  const std::size_t path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

HttpEmbedder::HttpEmbedder(std::string url, int timeout_ms) : timeout_ms_(timeout_ms) {
  if (timeout_ms < 1) throw std::invalid_argument("timeout must be >= 1 ms");
  std::tie(base_, path_) = split_url(url);
}

std::size_t HttpEmbedder::dimension() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return dimension_;
}

std::vector<EmbeddingVector> HttpEmbedder::embed_batch(std::span<const std::string> texts) {
  for (const std::string& text : texts) {
    if (text.empty()) throw ValidationError("cannot embed empty text");
  }
  if (texts.empty()) return {};

  nlohmann::json request;
  request["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  const std::string body =
      post_json(base_, path_, timeout_ms_, request.dump(), "embedding");

  nlohmann::json response;
  try {
    response = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("embedding response is not valid JSON: " + std::string(e.what()));
  }
  if (!response.is_object() || !response.contains("vectors") ||
      !response["vectors"].is_array()) {
    throw ParseError("embedding response is missing the 'vectors' array");
  }
  const nlohmann::json& vectors_json = response["vectors"];
  if (vectors_json.size() != texts.size()) {
    throw ParseError("embedding response has " + std::to_string(vectors_json.size()) +
                     " vectors for " + std::to_string(texts.size()) + " texts");
  }

  std::vector<EmbeddingVector> out;
  out.reserve(vectors_json.size());
  for (const nlohmann::json& vector_json : vectors_json) {
    if (!vector_json.is_array() || vector_json.empty()) {
      throw ParseError("embedding response vector must be a nonempty number array");
    }
    EmbeddingVector vec;
    vec.values.reserve(vector_json.size());
    for (const nlohmann::json& value : vector_json) {
      if (!value.is_number()) throw ParseError("embedding vector holds a non-number");
      vec.values.push_back(value.get<float>());
    }
    l2_normalize(vec.values);
    out.push_back(std::move(vec));
  }

  std::lock_guard<std::mutex> lock(mutex_);
  for (const EmbeddingVector& vec : out) {
    if (dimension_ == 0) dimension_ = vec.dimension();
    if (vec.dimension() != dimension_) {
      throw ValidationError("embedding dimension changed from " +
                            std::to_string(dimension_) + " to " +
                            std::to_string(vec.dimension()));
    }
  }
  return out;
}

HttpLanguageModel::HttpLanguageModel(std::string url, int top_logprobs, int timeout_ms)
    : top_logprobs_(top_logprobs), timeout_ms_(timeout_ms) {
  if (top_logprobs < 1) throw std::invalid_argument("logprobs must be >= 1");
  if (timeout_ms < 1) throw std::invalid_argument("timeout must be >= 1 ms");
  std::tie(base_, path_) = split_url(url);
}

std::vector<TokenStep> HttpLanguageModel::generate(const GenerationRequest& request) {
  if (request.prompt.empty()) throw ValidationError("prompt must be nonempty");
  if (request.max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");

  nlohmann::json body;
  body["prompt"] = request.prompt;
  body["max_tokens"] = request.max_tokens;
  body["logprobs"] = top_logprobs_;
  const std::string response_body =
      post_json(base_, path_, timeout_ms_, body.dump(), "generation");

  nlohmann::json response;
  try {
    response = nlohmann::json::parse(response_body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("generation response is not valid JSON: " + std::string(e.what()));
  }
  if (!response.is_object() || !response.contains("tokens") ||
      !response["tokens"].is_array() || !response.contains("top_logprobs") ||
      !response["top_logprobs"].is_array()) {
    throw ParseError("generation response needs 'tokens' and 'top_logprobs' arrays");
  }
  const nlohmann::json& tokens_json = response["tokens"];
  const nlohmann::json& logprobs_json = response["top_logprobs"];
  if (tokens_json.size() != logprobs_json.size()) {
    throw ParseError("generation response has " + std::to_string(tokens_json.size()) +
                     " tokens but " + std::to_string(logprobs_json.size()) +
                     " logprob entries");
  }

  std::vector<TokenStep> steps;
  for (std::size_t i = 0; i < tokens_json.size(); ++i) {
    if (steps.size() >= static_cast<std::size_t>(request.max_tokens)) break;
    if (!tokens_json[i].is_string()) throw ParseError("generated token must be a string");
    TokenStep step;
    step.token = tokens_json[i].get<std::string>();
    step.truncated = true;

    if (!logprobs_json[i].is_array() || logprobs_json[i].empty()) {
      throw ParseError("top_logprobs entry " + std::to_string(i + 1) +
                       " must be a nonempty array");
    }
    double listed_mass = 0.0;
    for (const nlohmann::json& entry : logprobs_json[i]) {
      if (!entry.is_object() || !entry.contains("token") || !entry["token"].is_string() ||
          !entry.contains("logprob") || !entry["logprob"].is_number()) {
        throw ParseError("top_logprobs entries must be {\"token\", \"logprob\"} objects");
      }
      const double p = std::exp(entry["logprob"].get<double>());
      step.probs.emplace_back(entry["token"].get<std::string>(), p);
      listed_mass += p;
    }
    if (listed_mass > 1.0 + 1e-6) {
      throw ValidationError("top_logprobs mass of step " + std::to_string(i + 1) +
                            " exceeds 1: " + std::to_string(listed_mass));
    }
    step.residual_mass = std::max(0.0, 1.0 - listed_mass);
    if (!is_greedy_consistent(step)) {
      throw ValidationError("step " + std::to_string(i + 1) + " token '" + step.token +
                            "' is not the argmax of its top_logprobs");
    }
    steps.push_back(std::move(step));

    bool stop = false;
    for (const std::string& stop_seq : request.stop_sequences) {
      if (!stop_seq.empty() &&
          steps.back().token.find(stop_seq) != std::string::npos) {
        stop = true;
        break;
      }
    }
    if (stop) break;
  }
  return steps;
}

}  // namespace lazyrag
