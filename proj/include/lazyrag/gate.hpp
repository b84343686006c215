#pragma once

#include <cstddef>
#include <vector>

#include "lazyrag/lm.hpp"

namespace lazyrag {

enum class GateMode {
  // Default: average the entropy of the first n steps, then compare once.
  MeanFirstN,
  // Variant: trigger as soon as any single step's entropy exceeds the
  // threshold, without waiting for the window to fill.
  StreamingHalt,
};

struct EntropyTrace {
  std::vector<double> per_step;  // nats, one value per generated step
  double mean_first_n = 0.0;     // +infinity when no steps were generated
  std::size_t n_used = 0;        // how many leading steps the mean covers
};

struct GateDecision {
  bool triggered = false;
  double threshold = 0.0;
  double mean_entropy = 0.0;
};

// Shannon entropy of one step's distribution in nats: -sum p*ln(p) with
// 0*ln(0) = 0. A truncated distribution's residual mass counts as one
// extra outcome, giving a lower bound on the true entropy.
double step_entropy(const TokenStep& step);

// Per-step entropies plus the mean over the first min(n, len) steps.
// An empty generation yields mean +infinity, the fail-safe that makes
// the gate fire rather than silently answer from nothing.
EntropyTrace mean_entropy(const std::vector<TokenStep>& steps, std::size_t n);

// Retrieval fires iff mean entropy strictly exceeds tau. Equality stays
// on the cheap path.
GateDecision decide(const EntropyTrace& trace, double tau);

// StreamingHalt rule: fires when any recorded step exceeds tau (or when
// nothing was generated). mean_entropy still reports the window mean.
GateDecision decide_streaming(const EntropyTrace& trace, double tau);

}  // namespace lazyrag
