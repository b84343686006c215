#include <cmath>
#include <optional>
#include <stdexcept>

#include <doctest.h>

#include "lazyrag/latency.hpp"

using namespace lazyrag;

TEST_CASE("cost model point values") {
  CHECK(overhead_ms({1.0, 500.0, 50.0}) == doctest::Approx(550.0));
  CHECK(overhead_ms({0.74, 500.0, 50.0}) == doctest::Approx(420.0));
  CHECK(overhead_ms({0.0, 1000.0, 50.0}) == doctest::Approx(50.0));

  CHECK(savings_ms({0.74, 500.0, 50.0}) == doctest::Approx(80.0));
  CHECK(savings_ms({0.92, 200.0, 50.0}) == doctest::Approx(-34.0));
  CHECK(savings_ms({0.54, 1000.0, 50.0}) == doctest::Approx(410.0));

  REQUIRE(break_even_ms(0.92).has_value());
  CHECK(*break_even_ms(0.92) == doctest::Approx(625.0));
  CHECK(*break_even_ms(0.74) == doctest::Approx(50.0 / 0.26));
  CHECK(*break_even_ms(0.0) == doctest::Approx(50.0));
  CHECK_FALSE(break_even_ms(1.0).has_value());
}

TEST_CASE("cost model identities") {
  // Always retrieving turns the gate into pure overhead.
  for (double t_retrieval : {0.0, 200.0, 1000.0}) {
    CHECK(savings_ms({1.0, t_retrieval, 50.0}) == doctest::Approx(-50.0));
  }
  // Savings are affine in retrieval latency with slope (1 - R).
  for (double rate : {0.0, 0.3, 0.74, 0.92}) {
    const double slope =
        (savings_ms({rate, 700.0, 50.0}) - savings_ms({rate, 200.0, 50.0})) / 500.0;
    CHECK(slope == doctest::Approx(1.0 - rate));
  }
  // At the break-even retrieval latency the saving vanishes.
  for (double rate : {0.0, 0.4, 0.74, 0.92, 0.99}) {
    const std::optional<double> be = break_even_ms(rate, 50.0);
    REQUIRE(be.has_value());
    CHECK(savings_ms({rate, *be, 50.0}) == doctest::Approx(0.0).epsilon(1e-12));
  }
  // Overhead minus savings is exactly the retrieval latency: one model,
  // two baselines.
  const LatencyScenario s{0.6, 350.0, 40.0};
  CHECK(overhead_ms(s) + savings_ms(s) == doctest::Approx(s.t_retrieval_ms));
}

TEST_CASE("cost model input validation") {
  CHECK_THROWS_AS(overhead_ms({-0.1, 100.0, 50.0}), std::invalid_argument);
  CHECK_THROWS_AS(overhead_ms({1.1, 100.0, 50.0}), std::invalid_argument);
  CHECK_THROWS_AS(savings_ms({0.5, -1.0, 50.0}), std::invalid_argument);
  CHECK_THROWS_AS(savings_ms({0.5, 100.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(break_even_ms(std::nan(""), 50.0), std::invalid_argument);
  CHECK_THROWS_AS(latency_table({}, 50.0, {200.0}), std::invalid_argument);
  CHECK_THROWS_AS(latency_table({{"x", 0.5}}, 50.0, {}), std::invalid_argument);
}

TEST_CASE("reference preset reproduces the published nine-cell table") {
  const LatencyTable table = reference_latency_table();
  REQUIRE(table.rows.size() == 3);
  REQUIRE(table.t_retrievals.size() == 3);
  CHECK(table.t_entropy_ms == 50.0);

  // Row 1: R=0.92 -> -34 / -10 / +30 at 200/500/1000ms, break-even 625.
  CHECK(table.rows[0].retrieval_rate == doctest::Approx(0.92));
  CHECK(table.rows[0].savings[0] == doctest::Approx(-34.0));
  CHECK(table.rows[0].savings[1] == doctest::Approx(-10.0));
  CHECK(table.rows[0].savings[2] == doctest::Approx(30.0));
  CHECK(*table.rows[0].break_even == doctest::Approx(625.0));
  // Row 2: R=0.74 -> +2 / +80 / +210, break-even ~192.
  CHECK(table.rows[1].savings[0] == doctest::Approx(2.0));
  CHECK(table.rows[1].savings[1] == doctest::Approx(80.0));
  CHECK(table.rows[1].savings[2] == doctest::Approx(210.0));
  CHECK(*table.rows[1].break_even == doctest::Approx(50.0 / 0.26));
  // Row 3: R=0.54 -> +42 / +180 / +410, break-even ~109.
  CHECK(table.rows[2].savings[0] == doctest::Approx(42.0));
  CHECK(table.rows[2].savings[1] == doctest::Approx(180.0));
  CHECK(table.rows[2].savings[2] == doctest::Approx(410.0));
  CHECK(*table.rows[2].break_even == doctest::Approx(50.0 / 0.46));
}

TEST_CASE("table construction mirrors the scalar model cell by cell") {
  const LatencyTable table =
      latency_table({{"a", 0.2}, {"b", 1.0}}, 30.0, {100.0, 400.0});
  REQUIRE(table.rows.size() == 2);
  REQUIRE(table.rows[0].savings.size() == 2);
  CHECK(table.rows[0].savings[0] ==
        doctest::Approx(savings_ms({0.2, 100.0, 30.0})));
  CHECK(table.rows[0].savings[1] ==
        doctest::Approx(savings_ms({0.2, 400.0, 30.0})));
  CHECK(*table.rows[0].break_even == doctest::Approx(30.0 / 0.8));
  CHECK_FALSE(table.rows[1].break_even.has_value());  // R = 1
}

TEST_CASE("latency renderings") {
  const LatencyTable table = latency_table({{"tau=1.0", 0.74}, {"all", 1.0}}, 50.0,
                                           {200.0, 500.0});

  SUBCASE("text rounds for display and signs the savings") {
    const std::string text = latency_text(table);
    CHECK(text.find("config") != std::string::npos);
    CHECK(text.find("savings@200ms") != std::string::npos);
    CHECK(text.find("savings@500ms") != std::string::npos);
    CHECK(text.find("tau=1.0") != std::string::npos);
    CHECK(text.find("+2") != std::string::npos);    // 0.26*200-50 = 2
    CHECK(text.find("+80") != std::string::npos);   // 0.26*500-50 = 80
    CHECK(text.find("-50") != std::string::npos);   // R=1 rows lose the gate cost
    CHECK(text.find("192") != std::string::npos);   // rounded break-even
    CHECK(text.find("n/a") != std::string::npos);   // no break-even at R=1
  }
  SUBCASE("CSV keeps raw values at four decimals") {
    const std::string csv = latency_csv(table);
    CHECK(csv.rfind("config,retrieval_rate,break_even_ms,savings@200ms,savings@500ms\n",
                    0) == 0);
    CHECK(csv.find("tau=1.0,0.7400,192.3077,2.0000,80.0000\n") != std::string::npos);
    CHECK(csv.find("all,1.0000,n/a,-50.0000,-50.0000\n") != std::string::npos);
  }
  SUBCASE("JSON carries raw numbers and a null break-even") {
    const nlohmann::ordered_json j = latency_to_json(table);
    CHECK(j["t_entropy_ms"] == 50.0);
    CHECK(j["t_retrieval_ms"].size() == 2);
    CHECK(j["rows"][0]["config"] == "tau=1.0");
    CHECK(j["rows"][0]["break_even_ms"] == doctest::Approx(50.0 / 0.26));
    CHECK(j["rows"][0]["savings_ms"][1] == doctest::Approx(80.0));
    CHECK(j["rows"][1]["break_even_ms"].is_null());
  }
}

TEST_CASE("display rounding is half away from zero") {
  // 0.26 * 202 - 50 = 2.52 -> +3; and a negative half further from zero.
  const LatencyTable up = latency_table({{"x", 0.74}}, 50.0, {202.0});
  CHECK(latency_text(up).find("+3") != std::string::npos);
  const LatencyTable down = latency_table({{"x", 0.5}}, 50.0, {99.0});
  // 0.5 * 99 - 50 = -0.5 -> away from zero -> -1.
  CHECK(latency_text(down).find("-1") != std::string::npos);
}
