#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "lazyrag/errors.hpp"
#include "lazyrag/gate.hpp"
#include "test_support.hpp"

using namespace lazyrag;
using testsupport::make_step;
using testsupport::uniform_step;

TEST_CASE("step entropy of known distributions") {
  SUBCASE("deterministic outcome has zero entropy") {
    CHECK(step_entropy(make_step("a", {{"a", 1.0}})) == doctest::Approx(0.0));
  }
  SUBCASE("uniform over m outcomes gives ln m") {
    CHECK(step_entropy(uniform_step(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(step_entropy(uniform_step(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(step_entropy(uniform_step(8)) == doctest::Approx(std::log(8.0)).epsilon(1e-12));
  }
  SUBCASE("zero-probability outcomes contribute nothing") {
    const double h = step_entropy(make_step("a", {{"a", 0.5}, {"b", 0.5}, {"c", 0.0}}));
    CHECK(h == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("residual mass counts as one outcome") {
    // {0.5 listed} + {0.5 residual} == a fair coin.
    const double h = step_entropy(make_step("a", {{"a", 0.5}}, 0.5, true));
    CHECK(h == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("invalid distributions are rejected") {
    CHECK_THROWS_AS(step_entropy(make_step("a", {{"a", 0.4}})), ValidationError);
  }
}

TEST_CASE("entropy bounds and invariances over random distributions") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 60; ++round) {
    const int m = 2 + static_cast<int>(rng() % 12);
    TokenStep step = testsupport::random_step(rng, m);
    const double h = step_entropy(step);
    // 0 <= H <= ln(outcomes)
    CHECK(h >= -1e-12);
    CHECK(h <= std::log(static_cast<double>(m)) + 1e-12);
    // Permuting outcomes changes nothing.
    std::reverse(step.probs.begin(), step.probs.end());
    step.token = step.probs.front().first;
    double best = 0.0;
    for (const auto& [tok, p] : step.probs) best = std::max(best, p);
    for (const auto& [tok, p] : step.probs) {
      if (p == best) {
        step.token = tok;
        break;
      }
    }
    CHECK(step_entropy(step) == doctest::Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("mixing toward uniform never lowers entropy") {
  std::mt19937_64 rng(56);
  for (int round = 0; round < 40; ++round) {
    const int m = 2 + static_cast<int>(rng() % 8);
    const TokenStep step = testsupport::random_step(rng, m);
    const double lambda = testsupport::random_unit(rng);
    TokenStep mixed = step;
    for (auto& [tok, p] : mixed.probs) {
      p = (1.0 - lambda) * p + lambda / static_cast<double>(m);
    }
    double best = 0.0;
    for (const auto& [tok, p] : mixed.probs) best = std::max(best, p);
    for (const auto& [tok, p] : mixed.probs) {
      if (p >= best - 1e-12) {
        mixed.token = tok;
        break;
      }
    }
    CHECK(step_entropy(mixed) >= step_entropy(step) - 1e-9);
  }
}

TEST_CASE("mean entropy over the leading window") {
  const std::vector<TokenStep> steps = {uniform_step(2), uniform_step(4), uniform_step(8)};

  SUBCASE("mean of the first n per-step values") {
    const EntropyTrace trace = mean_entropy(steps, 3);
    REQUIRE(trace.per_step.size() == 3);
    CHECK(trace.n_used == 3);
    // (ln2 + ln4 + ln8)/3 == 2 ln2
    CHECK(trace.mean_first_n == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("window larger than the generation uses what exists") {
    const EntropyTrace trace = mean_entropy(steps, 10);
    CHECK(trace.n_used == 3);
    CHECK(trace.mean_first_n == doctest::Approx(2.0 * std::log(2.0)));
  }
  SUBCASE("window smaller than the generation ignores the tail") {
    const EntropyTrace trace = mean_entropy(steps, 1);
    CHECK(trace.n_used == 1);
    CHECK(trace.mean_first_n == doctest::Approx(std::log(2.0)));
    CHECK(trace.per_step.size() == 3);  // the full trace is still recorded
  }
  SUBCASE("empty generation means infinite entropy") {
    const EntropyTrace trace = mean_entropy({}, 5);
    CHECK(trace.n_used == 0);
    CHECK(std::isinf(trace.mean_first_n));
    CHECK(trace.mean_first_n > 0);
  }
  SUBCASE("zero window is rejected") {
    CHECK_THROWS_AS(mean_entropy(steps, 0), std::invalid_argument);
  }
}

TEST_CASE("gate decision is a strict comparison") {
  EntropyTrace trace;
  trace.per_step = {1.0};
  trace.n_used = 1;

  trace.mean_first_n = 2.2;
  CHECK(decide(trace, 1.0).triggered);
  trace.mean_first_n = 0.5;
  CHECK_FALSE(decide(trace, 1.0).triggered);
  SUBCASE("equality stays on the cheap path") {
    trace.mean_first_n = 1.0;
    const GateDecision decision = decide(trace, 1.0);
    CHECK_FALSE(decision.triggered);
    CHECK(decision.threshold == 1.0);
    CHECK(decision.mean_entropy == 1.0);
  }
  SUBCASE("threshold zero triggers on any positive entropy") {
    trace.mean_first_n = 1e-9;
    CHECK(decide(trace, 0.0).triggered);
  }
  SUBCASE("negative or NaN thresholds are rejected") {
    CHECK_THROWS_AS(decide(trace, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(decide(trace, std::nan("")), std::invalid_argument);
  }
  SUBCASE("empty generation fails safe") {
    const EntropyTrace empty = mean_entropy({}, 4);
    CHECK(decide(empty, 1000.0).triggered);
  }
}

TEST_CASE("gate threshold monotonicity") {
  // If a trace triggers at some threshold, it triggers at every lower
  // threshold too: raising tau can only shrink the triggered set.
  std::mt19937_64 rng(57);
  for (int round = 0; round < 30; ++round) {
    std::vector<TokenStep> steps;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      steps.push_back(testsupport::random_step(rng, 2 + static_cast<int>(rng() % 10)));
    }
    const EntropyTrace trace = mean_entropy(steps, 4);
    const double lo = 2.0 * testsupport::random_unit(rng);
    const double hi = lo + 2.0 * testsupport::random_unit(rng);
    if (decide(trace, hi).triggered) CHECK(decide(trace, lo).triggered);
    if (!decide(trace, lo).triggered) CHECK_FALSE(decide(trace, hi).triggered);
  }
}

TEST_CASE("streaming halt triggers on any single step") {
  const std::vector<TokenStep> steps = {uniform_step(2), uniform_step(16), uniform_step(2)};
  const EntropyTrace trace = mean_entropy(steps, 3);
  // Mean is (ln2 + ln16 + ln2)/3 ~ 1.16; the spike alone is ln16 ~ 2.77.
  const double tau = 2.0;
  CHECK_FALSE(decide(trace, tau).triggered);
  CHECK(decide_streaming(trace, tau).triggered);

  SUBCASE("no step above the bar, no trigger") {
    CHECK_FALSE(decide_streaming(trace, 3.0).triggered);
  }
  SUBCASE("empty generation fails safe") {
    CHECK(decide_streaming(mean_entropy({}, 3), 99.0).triggered);
  }
  SUBCASE("spikes beyond the mean window still count") {
    // The spike sits at step 3 but the mean window covers only step 1:
    // the streaming rule watches every generated step.
    const EntropyTrace narrow = mean_entropy(steps, 1);
    CHECK(decide_streaming(narrow, 2.0).triggered);
  }
}
