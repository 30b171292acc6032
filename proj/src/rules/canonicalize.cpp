#include "unani/rules/canonicalize.hpp"

#include <algorithm>

namespace unani::rules {

RuleAst canonicalize_rule(const RuleAst& rule) {
  if (rule.kind != RuleKind::diagnostic) return rule;

  const auto treatment_count = std::count_if(rule.antecedents.begin(), rule.antecedents.end(),
                                             [](const Atom& a) { return is_treatment_predicate(a.predicate); });
  if (treatment_count == 0) return rule;

  const auto& loc = rule.provenance;
  if (static_cast<std::size_t>(treatment_count) != rule.antecedents.size()) {
    throw RuleError("mixed_rule_kind", "rule " + rule.id + " mixes treatment atoms with diagnostic evidence",
                    loc.line, loc.column);
  }
  if (rule.consequents.size() != 1) {
    throw RuleError("mixed_rule_kind",
                    "rule " + rule.id + " lists treatments for several diseases and cannot be made prescriptive",
                    loc.line, loc.column);
  }

  RuleAst flipped = rule;
  flipped.antecedents = rule.consequents;
  flipped.consequents = rule.antecedents;
  flipped.kind = RuleKind::prescriptive;
  return flipped;
}

std::vector<RuleAst> canonicalize_ruleset(const std::vector<RuleAst>& rules) {
  std::vector<RuleAst> out;
  out.reserve(rules.size());
  for (const auto& r : rules) out.push_back(canonicalize_rule(r));
  return out;
}

}  // namespace unani::rules
