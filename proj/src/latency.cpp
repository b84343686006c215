#include "lazyrag/latency.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

void check_scenario(double retrieval_rate, double t_retrieval_ms, double t_entropy_ms) {
  if (!(retrieval_rate >= 0.0 && retrieval_rate <= 1.0)) {
    throw std::invalid_argument("retrieval rate must lie in [0, 1]");
  }
  if (!(t_retrieval_ms >= 0.0)) throw std::invalid_argument("retrieval latency must be >= 0");
  if (!(t_entropy_ms >= 0.0)) throw std::invalid_argument("gate latency must be >= 0");
}

// Display rounding: nearest millisecond, halves away from zero.
long long display_ms(double v) { return std::llround(v); }

std::string compact_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

double overhead_ms(const LatencyScenario& s) {
  check_scenario(s.retrieval_rate, s.t_retrieval_ms, s.t_entropy_ms);
  return s.t_entropy_ms + s.retrieval_rate * s.t_retrieval_ms;
}

double savings_ms(const LatencyScenario& s) {
  check_scenario(s.retrieval_rate, s.t_retrieval_ms, s.t_entropy_ms);
  return (1.0 - s.retrieval_rate) * s.t_retrieval_ms - s.t_entropy_ms;
}

std::optional<double> break_even_ms(double retrieval_rate, double t_entropy_ms) {
  check_scenario(retrieval_rate, 0.0, t_entropy_ms);
  if (retrieval_rate >= 1.0) return std::nullopt;
  return t_entropy_ms / (1.0 - retrieval_rate);
}

LatencyTable latency_table(const std::vector<LatencyConfig>& configs, double t_entropy_ms,
                           const std::vector<double>& t_retrievals) {
  if (configs.empty()) throw std::invalid_argument("no configurations given");
  if (t_retrievals.empty()) throw std::invalid_argument("no scenarios given");
  LatencyTable table;
  table.t_entropy_ms = t_entropy_ms;
  table.t_retrievals = t_retrievals;
  for (const LatencyConfig& config : configs) {
    LatencyRow row;
    row.label = config.label;
    row.retrieval_rate = config.retrieval_rate;
    row.break_even = break_even_ms(config.retrieval_rate, t_entropy_ms);
    for (double t_retrieval : t_retrievals) {
      row.savings.push_back(
          savings_ms(LatencyScenario{config.retrieval_rate, t_retrieval, t_entropy_ms}));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

LatencyTable reference_latency_table() {
  return latency_table(
      {
          {"tau=0.5", 0.92},
          {"tau=1.0", 0.74},
          {"tau=1.5", 0.54},
      },
      50.0, {200.0, 500.0, 1000.0});
}

std::string latency_text(const LatencyTable& table) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-12s %8s %12s", "config", "R", "break-even");
  out += buf;
  for (double t_retrieval : table.t_retrievals) {
    std::snprintf(buf, sizeof(buf), " %14s",
                  ("savings@" + compact_number(t_retrieval) + "ms").c_str());
    out += buf;
  }
  out += "\n";
  for (const LatencyRow& row : table.rows) {
    std::snprintf(buf, sizeof(buf), "%-12s %8.2f %12s", row.label.c_str(),
                  row.retrieval_rate,
                  row.break_even ? std::to_string(display_ms(*row.break_even)).c_str()
                                 : "n/a");
    out += buf;
    for (double saving : row.savings) {
      std::snprintf(buf, sizeof(buf), " %+14lld", display_ms(saving));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string latency_csv(const LatencyTable& table) {
  std::string out = "config,retrieval_rate,break_even_ms";
  for (double t_retrieval : table.t_retrievals) {
    out += ",savings@" + compact_number(t_retrieval) + "ms";
  }
  out += "\n";
  for (const LatencyRow& row : table.rows) {
    out += row.label + "," + fixed4(row.retrieval_rate) + ",";
    out += row.break_even ? fixed4(*row.break_even) : "n/a";
    for (double saving : row.savings) out += "," + fixed4(saving);
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json latency_to_json(const LatencyTable& table) {
  nlohmann::ordered_json j;
  j["t_entropy_ms"] = table.t_entropy_ms;
  j["t_retrieval_ms"] = table.t_retrievals;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const LatencyRow& row : table.rows) {
    nlohmann::ordered_json rj;
    rj["config"] = row.label;
    rj["retrieval_rate"] = row.retrieval_rate;
    if (row.break_even) {
      rj["break_even_ms"] = *row.break_even;
    } else {
      rj["break_even_ms"] = nullptr;
    }
    rj["savings_ms"] = row.savings;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace lazyrag
