#pragma once

#include <vector>

#include "unani/common/validation.hpp"
#include "unani/knowledge/knowledge_base.hpp"
#include "unani/rules/ast.hpp"

namespace unani::rules {

struct RulesetValidationOptions {
  Severity unknown_constant = Severity::error;
};

/// Cross-checks rules against a knowledge base. Reports unknown_constant,
/// duplicate_rule_id, disease_without_diagnostic_rule,
/// disease_without_prescriptive_rule, and non_canonical_rule when a rule
/// cannot be canonicalized. Constants resolve within their predicate family;
/// Symptoms and Causes constants must also match the finding kind.
[[nodiscard]] ValidationReport validate_ruleset(const std::vector<RuleAst>& rules, const kb::KnowledgeBase& kb,
                                                const RulesetValidationOptions& options = {});

}  // namespace unani::rules
