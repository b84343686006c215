#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lazyrag {

// One generation step: the emitted token plus the distribution it was
// chosen from. A full distribution lists every outcome and carries
// residual_mass 0; a truncated one (typical for remote backends that
// return only the top-K logprobs) lumps the unlisted tail into
// residual_mass.
struct TokenStep {
  std::string token;
  std::vector<std::pair<std::string, double>> probs;
  double residual_mass = 0.0;
  bool truncated = false;
};

// Enforces the distribution contract: probabilities nonnegative,
// listed mass + residual within 1e-6 of 1, residual only when
// truncated. Throws ValidationError.
void validate_step(const TokenStep& step);

// True when the emitted token is an argmax of its own distribution —
// the invariant greedy decoding guarantees.
bool is_greedy_consistent(const TokenStep& step);

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 32;
  std::vector<std::string> stop_sequences = {"\n"};
};

class LanguageModel {
public:
  virtual ~LanguageModel() = default;

  // Greedy decoding: each returned step's token is an argmax of its own
  // distribution. Generation stops after max_tokens steps or once a
  // token containing a stop sequence is emitted (that step is kept).
  virtual std::vector<TokenStep> generate(const GenerationRequest& request) = 0;
};

// The generated text is the plain concatenation of step tokens; tokens
// carry their own leading whitespace.
std::string concat_tokens(const std::vector<TokenStep>& steps);

}  // namespace lazyrag
