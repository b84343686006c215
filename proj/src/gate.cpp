#include "lazyrag/gate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lazyrag {

double step_entropy(const TokenStep& step) {
  validate_step(step);
  double h = 0.0;
  for (const auto& [outcome, p] : step.probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  if (step.residual_mass > 0.0) {
    h -= step.residual_mass * std::log(step.residual_mass);
  }
  return h;
}

EntropyTrace mean_entropy(const std::vector<TokenStep>& steps, std::size_t n) {
  if (n == 0) throw std::invalid_argument("entropy window must cover at least one token");
  EntropyTrace trace;
  trace.per_step.reserve(steps.size());
  for (const TokenStep& step : steps) trace.per_step.push_back(step_entropy(step));
  trace.n_used = std::min(n, trace.per_step.size());
  if (trace.n_used == 0) {
    trace.mean_first_n = std::numeric_limits<double>::infinity();
    return trace;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < trace.n_used; ++i) sum += trace.per_step[i];
  trace.mean_first_n = sum / static_cast<double>(trace.n_used);
  return trace;
}

GateDecision decide(const EntropyTrace& trace, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
  return GateDecision{trace.mean_first_n > tau, tau, trace.mean_first_n};
}

GateDecision decide_streaming(const EntropyTrace& trace, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
  bool triggered = trace.per_step.empty();
  for (double h : trace.per_step) {
    if (h > tau) {
      triggered = true;
      break;
    }
  }
  return GateDecision{triggered, tau, trace.mean_first_n};
}

}  // namespace lazyrag
