#include <algorithm>
#include <sstream>

#include "unani/inference/engine.hpp"
#include "unani/rules/parser.hpp"

namespace unani::inference {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out.empty() ? "(none)" : out;
}

}  // namespace

Explanation explain(const Differential& differential, const std::vector<rules::RuleAst>& rules,
                    const std::string& disease_id) {
  const DifferentialEntry* entry = differential.find(disease_id);
  if (entry == nullptr) {
    throw InferenceError("not_in_differential", "disease not in differential: " + disease_id);
  }
  Explanation ex;
  ex.disease_id = entry->disease_id;
  ex.score = entry->score;
  for (const auto& m : entry->matched) ex.matched.push_back(format_ground_atom(m));
  ex.missing.assign(entry->missing.begin(), entry->missing.end());
  for (const auto& id : entry->fired_rules) {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const rules::RuleAst& r) { return r.id == id; });
    if (it == rules.end()) throw InferenceError("unknown_rule", "fired rule not in ruleset: " + id);
    ex.fired.push_back({id, rules::format_rule(*it)});
  }
  return ex;
}

std::string Explanation::to_text() const {
  std::ostringstream os;
  os << disease_id << " (score " << score << ")\n";
  os << "matched: " << join(matched) << "\n";
  os << "missing: " << join(missing) << "\n";
  os << "fired rules:" << (fired.empty() ? " (none)" : "") << "\n";
  for (const auto& f : fired) os << "@id " << f.rule_id << " " << f.text << "\n";
  return os.str();
}

nlohmann::json Explanation::to_json() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& f : fired) rules.push_back({{"rule_id", f.rule_id}, {"text", f.text}});
  return {{"disease_id", disease_id},
          {"score", score},
          {"matched", matched},
          {"missing", missing},
          {"fired_rules", std::move(rules)}};
}

}  // namespace unani::inference
