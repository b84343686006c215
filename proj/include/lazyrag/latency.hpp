#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lazyrag {

// Cost model for the adaptive pipeline against always-retrieve RAG.
// Per query the gate itself costs t_entropy_ms, and a fraction
// retrieval_rate of queries still pays the full retrieval latency
// t_retrieval_ms on top.
struct LatencyScenario {
  double retrieval_rate = 0.0;  // R in [0, 1]
  double t_retrieval_ms = 0.0;
  double t_entropy_ms = 50.0;
};

// Expected added latency per query versus answering straight from the
// summary: t_entropy + R * t_retrieval.
double overhead_ms(const LatencyScenario& s);

// Expected saving per query versus always retrieving:
// (1 - R) * t_retrieval - t_entropy. Negative when the gate fires so
// often that its own cost outweighs the skipped retrievals.
double savings_ms(const LatencyScenario& s);

// Retrieval latency at which the gate exactly pays for itself:
// t_entropy / (1 - R). Undefined when every query retrieves (R = 1).
std::optional<double> break_even_ms(double retrieval_rate, double t_entropy_ms = 50.0);

struct LatencyConfig {
  std::string label;
  double retrieval_rate = 0.0;
};

struct LatencyRow {
  std::string label;
  double retrieval_rate = 0.0;
  std::optional<double> break_even;
  std::vector<double> savings;  // one entry per retrieval-latency scenario
};

struct LatencyTable {
  double t_entropy_ms = 50.0;
  std::vector<double> t_retrievals;
  std::vector<LatencyRow> rows;
};

// One row per config, one savings column per retrieval latency.
// Requires at least one config and one retrieval latency.
LatencyTable latency_table(const std::vector<LatencyConfig>& configs, double t_entropy_ms,
                           const std::vector<double>& t_retrievals);

// The built-in reference preset: retrieval rates 0.92 / 0.74 / 0.54
// (labelled by the thresholds that produce them), a 50 ms gate, and
// retrieval latencies of 200 / 500 / 1000 ms.
LatencyTable reference_latency_table();

// Rendering. The text table rounds milliseconds half away from zero for
// display; CSV and JSON keep raw values (CSV at four decimals).
std::string latency_text(const LatencyTable& table);
std::string latency_csv(const LatencyTable& table);
nlohmann::ordered_json latency_to_json(const LatencyTable& table);

}  // namespace lazyrag
