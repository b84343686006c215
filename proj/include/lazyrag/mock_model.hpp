#pragma once

#include <string>
#include <vector>

#include "lazyrag/lm.hpp"

namespace lazyrag {

// One scripted behavior: when `pattern` occurs anywhere in the prompt,
// the model plays back `steps`.
struct MockRule {
  std::string pattern;
  std::vector<TokenStep> steps;
};

// Fully deterministic scripted model for offline runs and tests. Rules
// are checked in file order and the first match wins; prompts matching
// no rule fall through to the mandatory default steps. An empty step
// list is legal and models a backend that stops immediately.
class MockModel final : public LanguageModel {
public:
  MockModel(std::vector<MockRule> rules, std::vector<TokenStep> default_steps);

  // Script format:
  //   {"rules": [{"pattern": "...", "steps": [{"token": "...",
  //     "probs": {"outcome": 0.9, ...}}, ...]}, ...],
  //    "default": {"steps": [...]}}
  // Every step must satisfy the distribution contract and emit one of
  // its own argmax outcomes; violations name the offending rule.
  static MockModel from_json(const std::string& json_text,
                             const std::string& source_name = "<script>");
  static MockModel from_file(const std::string& path);

  std::vector<TokenStep> generate(const GenerationRequest& request) override;

  std::size_t rule_count() const { return rules_.size(); }

private:
  std::vector<MockRule> rules_;
  std::vector<TokenStep> default_steps_;
};

}  // namespace lazyrag
