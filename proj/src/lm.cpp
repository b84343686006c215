#include "lazyrag/lm.hpp"

#include <cmath>

#include "lazyrag/errors.hpp"

namespace lazyrag {

void validate_step(const TokenStep& step) {
  if (step.token.empty()) throw ValidationError("step emits an empty token");
  if (step.probs.empty()) throw ValidationError("step has an empty distribution");
  double sum = 0.0;
  for (const auto& [outcome, p] : step.probs) {
    if (outcome.empty()) throw ValidationError("distribution lists an empty outcome");
    if (p < 0.0) throw ValidationError("negative probability for outcome '" + outcome + "'");
    sum += p;
  }
  if (step.residual_mass < 0.0) throw ValidationError("negative residual mass");
  if (!step.truncated && step.residual_mass != 0.0) {
    throw ValidationError("full distribution must have zero residual mass");
  }
  const double total = sum + step.residual_mass;
  if (std::abs(total - 1.0) > 1e-6) {
    throw ValidationError("distribution mass sums to " + std::to_string(total) +
                          ", expected 1 within 1e-6");
  }
}

bool is_greedy_consistent(const TokenStep& step) {
  double best = 0.0;
  for (const auto& [outcome, p] : step.probs) best = std::max(best, p);
  for (const auto& [outcome, p] : step.probs) {
    if (outcome == step.token) return p >= best - 1e-9;
  }
  return false;  // emitted token is not even listed
}

std::string concat_tokens(const std::vector<TokenStep>& steps) {
  std::string out;
  for (const TokenStep& step : steps) out += step.token;
  return out;
}

}  // namespace lazyrag
