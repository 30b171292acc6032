#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unani/common/error.hpp"

namespace unani::rules {

enum class Predicate {
  symptoms,
  causes,
  disease,
  treatment_principles,
  regimental_therapy,
  prevention,
};

/// Canonical surface spelling, e.g. "TreatmentPrinciples".
[[nodiscard]] const char* to_string(Predicate p) noexcept;

/// Accepts canonical names and the aliases hasDisease and Treatment.
[[nodiscard]] std::optional<Predicate> parse_predicate(std::string_view name) noexcept;

[[nodiscard]] constexpr bool is_finding_predicate(Predicate p) noexcept {
  return p == Predicate::symptoms || p == Predicate::causes;
}
[[nodiscard]] constexpr bool is_treatment_predicate(Predicate p) noexcept {
  return p == Predicate::treatment_principles || p == Predicate::regimental_therapy ||
         p == Predicate::prevention;
}

struct Atom {
  Predicate predicate = Predicate::symptoms;
  std::string variable;  // the case variable, without '?'
  std::string constant;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class RuleKind { diagnostic, prescriptive };

[[nodiscard]] const char* to_string(RuleKind kind) noexcept;

struct SourceLocation {
  std::string source;
  int line = 0;
  int column = 0;
};

struct RuleAst {
  std::string id;
  std::vector<Atom> antecedents;
  std::vector<Atom> consequents;
  RuleKind kind = RuleKind::diagnostic;
  SourceLocation provenance;

  /// Structural equality; provenance is not part of a rule's identity.
  friend bool operator==(const RuleAst& a, const RuleAst& b) {
    return a.id == b.id && a.antecedents == b.antecedents && a.consequents == b.consequents &&
           a.kind == b.kind;
  }
};

/// Error raised while parsing or canonicalizing rules. code() is one of
/// syntax_error, unknown_predicate, mixed_rule_kind, multiple_variables,
/// duplicate_atom, invalid_constant.
class RuleError : public Error {
 public:
  RuleError(std::string code, const std::string& message, int line = 0, int column = 0)
      : Error(std::move(code), line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                        : message),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Kind implied by the atom predicates, or nullopt when the rule is neither
/// diagnostic nor prescriptive.
[[nodiscard]] std::optional<RuleKind> infer_kind(const std::vector<Atom>& antecedents,
                                                 const std::vector<Atom>& consequents) noexcept;

}  // namespace unani::rules
