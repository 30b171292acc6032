#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "unani/common/error.hpp"
#include "unani/inference/working_memory.hpp"
#include "unani/knowledge/knowledge_base.hpp"
#include "unani/rules/ast.hpp"

namespace unani::inference {

class InferenceError : public Error {
 public:
  using Error::Error;
};

/// Least fixpoint of `rules` over `wm`: a rule fires once all of its
/// antecedents are present and adds all of its consequents. Antecedent
/// bookkeeping uses per-rule counters indexed by atom, so each atom is
/// processed once. The resulting atom set does not depend on rule order.
[[nodiscard]] WorkingMemory forward_chain(const std::vector<rules::RuleAst>& rules, WorkingMemory wm);

struct KindWeights {
  double symptom = 1.0;
  double cause = 1.0;
};

struct DiagnosisParams {
  double threshold = 0.0;
  bool strict_vocabulary = false;
  KindWeights kind_weights;
};

struct DifferentialEntry {
  std::string disease_id;
  double score = 0.0;
  std::set<GroundAtom> matched;
  std::set<std::string> missing;
  std::vector<std::string> fired_rules;

  friend bool operator==(const DifferentialEntry&, const DifferentialEntry&) = default;
};

/// Candidate diseases ranked by (score desc, disease_id asc).
struct Differential {
  std::vector<DifferentialEntry> entries;
  std::vector<std::string> warnings;

  [[nodiscard]] const DifferentialEntry* find(std::string_view disease_id) const;

  friend bool operator==(const Differential&, const Differential&) = default;
};

void rank_entries(std::vector<DifferentialEntry>& entries);

/// Entries in rank order as a JSON array; warnings are not included.
[[nodiscard]] nlohmann::json differential_to_json(const Differential& differential);
[[nodiscard]] Differential differential_from_json(const nlohmann::json& entries);

/// Ranks every disease that has a diagnostic rule. A disease's evidence set
/// is the union of antecedent atoms over its diagnostic rules; its score is
/// the (kind-weighted) share of that set present in `findings`. Diseases with
/// no matched evidence or a score below params.threshold are left out.
/// fired_rules lists the diagnostic rules whose antecedents all hold.
///
/// Throws InferenceError with code empty_findings, unknown_finding (only
/// with strict_vocabulary; otherwise unknown ids become warnings) or
/// invalid_params.
[[nodiscard]] Differential diagnose(const kb::KnowledgeBase& kb, const std::vector<rules::RuleAst>& rules,
                                    const std::set<std::string>& findings, const DiagnosisParams& params = {});

struct PlanItem {
  std::string id;
  std::string label;
  std::vector<std::string> sources;  // rule ids, or "kb" for knowledge-base edges

  friend bool operator==(const PlanItem&, const PlanItem&) = default;
};

struct TreatmentPlan {
  std::vector<PlanItem> principle;
  std::vector<PlanItem> regimental;
  std::vector<PlanItem> prevention;

  [[nodiscard]] bool empty() const noexcept {
    return principle.empty() && regimental.empty() && prevention.empty();
  }
  [[nodiscard]] std::vector<std::string> ids(rules::Predicate family) const;

  friend bool operator==(const TreatmentPlan&, const TreatmentPlan&) = default;
};

[[nodiscard]] nlohmann::json plan_to_json(const TreatmentPlan& plan);
[[nodiscard]] TreatmentPlan plan_from_json(const nlohmann::json& doc);

/// Chains from {Disease(disease_id)} and groups the derived treatment atoms by
/// predicate, in rule order. Treatment edges of the disease that no rule
/// produced are appended with source "kb". Throws InferenceError(unknown_disease).
[[nodiscard]] TreatmentPlan recommend_treatments(const kb::KnowledgeBase& kb,
                                                 const std::vector<rules::RuleAst>& rules,
                                                 const std::string& disease_id);

struct FiredRule {
  std::string rule_id;
  std::string text;  // format_rule output; parse_rule accepts it
};

struct Explanation {
  std::string disease_id;
  double score = 0.0;
  std::vector<std::string> matched;
  std::vector<std::string> missing;
  std::vector<FiredRule> fired;

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws InferenceError(not_in_differential) when the disease is absent.
[[nodiscard]] Explanation explain(const Differential& differential, const std::vector<rules::RuleAst>& rules,
                                  const std::string& disease_id);

}  // namespace unani::inference
