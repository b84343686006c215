#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include "lazyrag/errors.hpp"
#include "lazyrag/gate.hpp"
#include "lazyrag/http_clients.hpp"

using namespace lazyrag;

namespace {

// In-process HTTP endpoint: every POST lands in the installed handler.
class WireServer {
public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  WireServer() {
    server_.Post(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      Handler handler;
      {
        std::lock_guard<std::mutex> lock(mutex_);
        handler = handler_;
      }
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~WireServer() {
    server_.stop();
    thread_.join();
  }

  void respond_with(Handler handler) {
    std::lock_guard<std::mutex> lock(mutex_);
    handler_ = std::move(handler);
  }

  void respond_json(const std::string& body) {
    respond_with([body](const httplib::Request&, httplib::Response& res) {
      res.set_content(body, "application/json");
    });
  }

  void respond_status(int status) {
    respond_with([status](const httplib::Request&, httplib::Response& res) {
      res.status = status;
    });
  }

  std::string url(const std::string& path = "/") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  int hits() const { return hits_; }

private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::mutex mutex_;
  Handler handler_ = [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  };
};

}  // namespace

TEST_CASE("url splitting") {
  CHECK(split_url("http://host:8080") == std::pair<std::string, std::string>{
                                             "http://host:8080", "/"});
  CHECK(split_url("http://host:8080/v1/embed") ==
        std::pair<std::string, std::string>{"http://host:8080", "/v1/embed"});
  CHECK(split_url("https://host/x") ==
        std::pair<std::string, std::string>{"https://host", "/x"});
  CHECK_THROWS_AS(split_url("host:8080/embed"), ValidationError);
  CHECK_THROWS_AS(split_url("ftp://host/x"), ValidationError);
}

TEST_CASE("client constructors validate their parameters") {
  CHECK_THROWS_AS(HttpEmbedder("http://h", 0), std::invalid_argument);
  CHECK_THROWS_AS(HttpLanguageModel("http://h", 0), std::invalid_argument);
  CHECK_THROWS_AS(HttpLanguageModel("http://h", 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(HttpEmbedder("nope"), ValidationError);
}

TEST_CASE("remote embedder") {
  WireServer server;
  HttpEmbedder embedder(server.url("/embed"), 5000);

  SUBCASE("vectors are normalized on arrival and the dimension is pinned") {
    server.respond_with([](const httplib::Request& req, httplib::Response& res) {
      const nlohmann::json body = nlohmann::json::parse(req.body);
      REQUIRE(body["texts"].size() == 2);
      CHECK(body["texts"][0] == "alpha");
      res.set_content(R"({"vectors": [[3.0, 4.0], [0.0, 2.0]]})", "application/json");
    });
    const std::vector<std::string> texts = {"alpha", "beta"};
    const std::vector<EmbeddingVector> vecs = embedder.embed_batch(texts);
    REQUIRE(vecs.size() == 2);
    CHECK(vecs[0].values[0] == doctest::Approx(0.6));
    CHECK(vecs[0].values[1] == doctest::Approx(0.8));
    CHECK(vecs[1].values[1] == doctest::Approx(1.0));
    CHECK(embedder.dimension() == 2);

    // A later response with a different width is a contract violation.
    server.respond_json(R"({"vectors": [[1.0, 0.0, 0.0]]})");
    const std::vector<std::string> one = {"gamma"};
    CHECK_THROWS_AS(embedder.embed_batch(one), ValidationError);
  }
  SUBCASE("response shape errors") {
    const std::vector<std::string> one = {"x"};
    server.respond_json("{not json");
    CHECK_THROWS_AS(embedder.embed_batch(one), ParseError);
    server.respond_json(R"({"wrong": []})");
    CHECK_THROWS_AS(embedder.embed_batch(one), ParseError);
    server.respond_json(R"({"vectors": [[1.0], [2.0]]})");  // 2 vectors, 1 text
    CHECK_THROWS_AS(embedder.embed_batch(one), ParseError);
    server.respond_json(R"({"vectors": [["a"]]})");
    CHECK_THROWS_AS(embedder.embed_batch(one), ParseError);
    server.respond_json(R"({"vectors": [[]]})");
    CHECK_THROWS_AS(embedder.embed_batch(one), ParseError);
  }
  SUBCASE("status codes map onto retryability") {
    const std::vector<std::string> one = {"x"};
    const auto expect_transport = [&](int status, bool retryable) {
      server.respond_status(status);
      try {
        embedder.embed_batch(one);
        FAIL("expected TransportError for HTTP ", status);
      } catch (const TransportError& e) {
        CAPTURE(status);
        CHECK(e.retryable() == retryable);
        CHECK(std::string(e.what()).find(std::to_string(status)) != std::string::npos);
      }
    };
    expect_transport(500, true);
    expect_transport(503, true);
    expect_transport(408, true);
    expect_transport(429, true);
    expect_transport(404, false);
    expect_transport(400, false);
  }
  SUBCASE("empty texts are rejected before any network traffic") {
    const std::vector<std::string> texts = {"ok", ""};
    CHECK_THROWS_AS(embedder.embed_batch(texts), ValidationError);
    CHECK(server.hits() == 0);
  }
  SUBCASE("an empty batch never leaves the process") {
    CHECK(embedder.embed_batch({}).empty());
    CHECK(server.hits() == 0);
  }
}

TEST_CASE("connection refused raises a retryable transport error") {
  // Port 1 on localhost has no listener.
  HttpEmbedder embedder("http://127.0.0.1:1", 2000);
  const std::vector<std::string> one = {"x"};
  try {
    embedder.embed_batch(one);
    FAIL("expected TransportError");
  } catch (const TransportError& e) {
    CHECK(e.retryable());
  }
}

TEST_CASE("remote language model") {
  WireServer server;
  HttpLanguageModel model(server.url("/generate"), 5, 5000);

  SUBCASE("logprobs become truncated distributions with residual mass") {
    server.respond_with([](const httplib::Request& req, httplib::Response& res) {
      const nlohmann::json body = nlohmann::json::parse(req.body);
      CHECK(body["prompt"] == "Q");
      CHECK(body["logprobs"] == 5);
      res.set_content(R"({
        "tokens": [" Paris"],
        "top_logprobs": [[
          {"token": " Paris", "logprob": -0.1},
          {"token": " London", "logprob": -3.0}
        ]]
      })", "application/json");
    });
    const std::vector<TokenStep> steps = model.generate({"Q", 8, {}});
    REQUIRE(steps.size() == 1);
    const TokenStep& step = steps[0];
    CHECK(step.token == " Paris");
    CHECK(step.truncated);
    REQUIRE(step.probs.size() == 2);
    CHECK(step.probs[0].second == doctest::Approx(std::exp(-0.1)));
    CHECK(step.probs[1].second == doctest::Approx(std::exp(-3.0)));
    CHECK(step.residual_mass ==
          doctest::Approx(1.0 - std::exp(-0.1) - std::exp(-3.0)));
    // The converted step satisfies the distribution contract and has a
    // well-defined entropy that counts the unlisted tail.
    validate_step(step);
    const double entropy = step_entropy(step);
    CHECK(entropy > 0.0);
    CHECK(entropy < std::log(5.0) + 1.0);
  }
  SUBCASE("a non-argmax emitted token is rejected") {
    server.respond_json(R"({
      "tokens": [" London"],
      "top_logprobs": [[
        {"token": " Paris", "logprob": -0.1},
        {"token": " London", "logprob": -3.0}
      ]]
    })");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ValidationError);
  }
  SUBCASE("listed mass above one is rejected") {
    server.respond_json(R"({
      "tokens": ["a"],
      "top_logprobs": [[
        {"token": "a", "logprob": 0.3},
        {"token": "b", "logprob": 0.2}
      ]]
    })");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ValidationError);
  }
  SUBCASE("client-side stop sequences cut after the matching token") {
    server.respond_json(R"({
      "tokens": [" Hello", "\n", " tail"],
      "top_logprobs": [
        [{"token": " Hello", "logprob": -0.01}],
        [{"token": "\n", "logprob": -0.01}],
        [{"token": " tail", "logprob": -0.01}]
      ]
    })");
    const std::vector<TokenStep> steps = model.generate({"Q", 8, {"\n"}});
    REQUIRE(steps.size() == 2);
    CHECK(steps.back().token == "\n");
  }
  SUBCASE("max_tokens clamps overlong responses") {
    server.respond_json(R"({
      "tokens": ["a", "b", "c", "d", "e"],
      "top_logprobs": [
        [{"token": "a", "logprob": -0.01}],
        [{"token": "b", "logprob": -0.01}],
        [{"token": "c", "logprob": -0.01}],
        [{"token": "d", "logprob": -0.01}],
        [{"token": "e", "logprob": -0.01}]
      ]
    })");
    CHECK(model.generate({"Q", 3, {}}).size() == 3);
  }
  SUBCASE("shape errors") {
    server.respond_json(R"({"tokens": ["a"], "top_logprobs": []})");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ParseError);
    server.respond_json(R"({"tokens": ["a"]})");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ParseError);
    server.respond_json(R"({"tokens": ["a"], "top_logprobs": [[]]})");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ParseError);
    server.respond_json(R"({"tokens": ["a"], "top_logprobs": [[{"token": "a"}]]})");
    CHECK_THROWS_AS(model.generate({"Q", 8, {}}), ParseError);
  }
  SUBCASE("request validation happens before the wire") {
    CHECK_THROWS_AS(model.generate({"", 8, {}}), ValidationError);
    CHECK_THROWS_AS(model.generate({"Q", 0, {}}), std::invalid_argument);
    CHECK(server.hits() == 0);
  }
}
