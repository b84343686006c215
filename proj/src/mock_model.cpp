#include "lazyrag/mock_model.hpp"

#include <stdexcept>

#include <json.hpp>

#include "lazyrag/errors.hpp"
#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

std::vector<TokenStep> parse_steps(const nlohmann::json& steps_json,
                                   const std::string& where) {
  if (!steps_json.is_array()) throw ParseError(where + ": 'steps' must be an array");
  std::vector<TokenStep> steps;
  steps.reserve(steps_json.size());
  for (std::size_t i = 0; i < steps_json.size(); ++i) {
    const std::string step_where = where + ", step " + std::to_string(i + 1);
    const nlohmann::json& sj = steps_json[i];
    if (!sj.is_object() || !sj.contains("token") || !sj["token"].is_string() ||
        !sj.contains("probs") || !sj["probs"].is_object()) {
      throw ParseError(step_where + ": expected {\"token\": str, \"probs\": {str: num}}");
    }
    TokenStep step;
    step.token = sj["token"].get<std::string>();
    for (const auto& [outcome, value] : sj["probs"].items()) {
      if (!value.is_number()) {
        throw ParseError(step_where + ": probability of '" + outcome + "' must be a number");
      }
      step.probs.emplace_back(outcome, value.get<double>());
    }
    try {
      validate_step(step);
    } catch (const ValidationError& e) {
      throw ValidationError(step_where + ": " + e.what());
    }
    if (!is_greedy_consistent(step)) {
      throw ValidationError(step_where + ": emitted token '" + step.token +
                            "' is not an argmax of its distribution");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace

MockModel::MockModel(std::vector<MockRule> rules, std::vector<TokenStep> default_steps)
    : rules_(std::move(rules)), default_steps_(std::move(default_steps)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].pattern.empty()) {
      throw ValidationError("rule " + std::to_string(i + 1) + ": empty pattern");
    }
  }
}

MockModel MockModel::from_json(const std::string& json_text,
                               const std::string& source_name) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(source_name + ": script must be a JSON object");

  std::vector<MockRule> rules;
  if (root.contains("rules")) {
    if (!root["rules"].is_array()) throw ParseError(source_name + ": 'rules' must be an array");
    for (std::size_t i = 0; i < root["rules"].size(); ++i) {
      const std::string where = source_name + ": rule " + std::to_string(i + 1);
      const nlohmann::json& rj = root["rules"][i];
      if (!rj.is_object() || !rj.contains("pattern") || !rj["pattern"].is_string() ||
          rj["pattern"].get<std::string>().empty()) {
        throw ParseError(where + ": expected a nonempty string field 'pattern'");
      }
      if (!rj.contains("steps")) throw ParseError(where + ": missing 'steps'");
      rules.push_back(MockRule{rj["pattern"].get<std::string>(),
                               parse_steps(rj["steps"], where)});
    }
  }
  if (!root.contains("default") || !root["default"].is_object() ||
      !root["default"].contains("steps")) {
    throw ParseError(source_name + ": missing required 'default' rule with 'steps'");
  }
  std::vector<TokenStep> default_steps =
      parse_steps(root["default"]["steps"], source_name + ": default rule");
  return MockModel(std::move(rules), std::move(default_steps));
}

MockModel MockModel::from_file(const std::string& path) {
  return from_json(read_file(path), path);
}

std::vector<TokenStep> MockModel::generate(const GenerationRequest& request) {
  if (request.prompt.empty()) throw ValidationError("prompt must be nonempty");
  if (request.max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");

  const std::vector<TokenStep>* steps = &default_steps_;
  for (const MockRule& rule : rules_) {
    if (request.prompt.find(rule.pattern) != std::string::npos) {
      steps = &rule.steps;
      break;
    }
  }
  std::vector<TokenStep> out;
  for (const TokenStep& step : *steps) {
    if (out.size() >= static_cast<std::size_t>(request.max_tokens)) break;
    out.push_back(step);
    bool stop = false;
    for (const std::string& stop_seq : request.stop_sequences) {
      if (!stop_seq.empty() && step.token.find(stop_seq) != std::string::npos) {
        stop = true;
        break;
      }
    }
    if (stop) break;
  }
  return out;
}

}  // namespace lazyrag
