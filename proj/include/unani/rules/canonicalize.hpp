#pragma once

#include <vector>

#include "unani/rules/ast.hpp"

namespace unani::rules {

/// Rewrites "treatments -> Disease(d)" rules into prescriptive form
/// "Disease(d) -> treatments". Every other rule is returned unchanged.
/// Idempotent. Throws RuleError(mixed_rule_kind) when a diagnostic rule mixes
/// treatment atoms into its evidence or a treatment-only rule concludes more
/// than one disease.
[[nodiscard]] RuleAst canonicalize_rule(const RuleAst& rule);

[[nodiscard]] std::vector<RuleAst> canonicalize_ruleset(const std::vector<RuleAst>& rules);

}  // namespace unani::rules
