#include "unani/rules/validate.hpp"

#include <map>
#include <set>

#include "unani/rules/canonicalize.hpp"

namespace unani::rules {
namespace {

bool resolves(const Atom& atom, const kb::KnowledgeBase& kb) {
  if (is_finding_predicate(atom.predicate)) {
    const kb::Finding* f = kb.find_finding(atom.constant);
    const auto kind = atom.predicate == Predicate::symptoms ? kb::FindingKind::symptom : kb::FindingKind::cause;
    return f != nullptr && f->kind == kind;
  }
  if (atom.predicate == Predicate::disease) return kb.find_disease(atom.constant) != nullptr;
  return kb.find_treatment(atom.constant) != nullptr;
}

}  // namespace

ValidationReport validate_ruleset(const std::vector<RuleAst>& rules, const kb::KnowledgeBase& kb,
                                  const RulesetValidationOptions& options) {
  ValidationReport report;

  std::map<std::string, int> id_counts;
  for (const auto& rule : rules) ++id_counts[rule.id];
  for (const auto& [id, count] : id_counts) {
    if (count > 1) {
      report.add("duplicate_rule_id", id, "rule id '" + id + "' is used by " + std::to_string(count) + " rules");
    }
  }

  std::set<std::string> diagnosed;
  std::set<std::string> treated;
  for (const auto& rule : rules) {
    for (const auto* side : {&rule.antecedents, &rule.consequents}) {
      for (const auto& atom : *side) {
        if (!resolves(atom, kb)) {
          report.add("unknown_constant", rule.id,
                     std::string(to_string(atom.predicate)) + " constant '" + atom.constant +
                         "' is not in the knowledge base",
                     options.unknown_constant);
        }
      }
    }

    RuleAst canonical;
    try {
      canonical = canonicalize_rule(rule);
    } catch (const RuleError& e) {
      report.add("non_canonical_rule", rule.id, e.what());
      continue;
    }
    if (canonical.kind == RuleKind::diagnostic) {
      for (const auto& atom : canonical.consequents) diagnosed.insert(atom.constant);
    } else {
      for (const auto& atom : canonical.antecedents) treated.insert(atom.constant);
    }
  }

  for (const auto& [id, disease] : kb.diseases()) {
    if (!diagnosed.contains(id)) {
      report.add("disease_without_diagnostic_rule", "disease:" + id, "no diagnostic rule concludes '" + id + "'");
    }
    if (!treated.contains(id)) {
      report.add("disease_without_prescriptive_rule", "disease:" + id,
                 "no prescriptive rule starts from '" + id + "'");
    }
  }
  return report;
}

}  // namespace unani::rules
