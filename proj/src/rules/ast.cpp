#include "unani/rules/ast.hpp"

#include <algorithm>

namespace unani::rules {

const char* to_string(Predicate p) noexcept {
  switch (p) {
    case Predicate::symptoms: return "Symptoms";
    case Predicate::causes: return "Causes";
    case Predicate::disease: return "Disease";
    case Predicate::treatment_principles: return "TreatmentPrinciples";
    case Predicate::regimental_therapy: return "RegimentalTherapy";
    case Predicate::prevention: return "Prevention";
  }
  return "Symptoms";
}

std::optional<Predicate> parse_predicate(std::string_view name) noexcept {
  if (name == "Symptoms") return Predicate::symptoms;
  if (name == "Causes") return Predicate::causes;
  if (name == "Disease" || name == "hasDisease") return Predicate::disease;
  if (name == "TreatmentPrinciples" || name == "Treatment") return Predicate::treatment_principles;
  if (name == "RegimentalTherapy") return Predicate::regimental_therapy;
  if (name == "Prevention") return Predicate::prevention;
  return std::nullopt;
}

const char* to_string(RuleKind kind) noexcept {
  return kind == RuleKind::diagnostic ? "diagnostic" : "prescriptive";
}

std::optional<RuleKind> infer_kind(const std::vector<Atom>& antecedents,
                                   const std::vector<Atom>& consequents) noexcept {
  auto is_disease = [](const Atom& a) { return a.predicate == Predicate::disease; };
  auto is_treatment = [](const Atom& a) { return is_treatment_predicate(a.predicate); };
  if (antecedents.empty() || consequents.empty()) return std::nullopt;
  if (std::all_of(consequents.begin(), consequents.end(), is_disease) &&
      std::none_of(antecedents.begin(), antecedents.end(), is_disease)) {
    return RuleKind::diagnostic;
  }
  if (std::all_of(antecedents.begin(), antecedents.end(), is_disease) &&
      std::all_of(consequents.begin(), consequents.end(), is_treatment)) {
    return RuleKind::prescriptive;
  }
  return std::nullopt;
}

}  // namespace unani::rules
