#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unani/rules/ast.hpp"

namespace unani::rules {

/// Parses rule text:
///
///   ruleset := ( ["@id" TOKEN] rule )*
///   rule    := atom ("," atom)* "->" atom ("," atom)*
///   atom    := PRED "(" "?" IDENT "," IDENT ")"
///
/// `#` starts a comment. Whitespace, including newlines, is insignificant, so
/// a rule ends where the next atom is not preceded by a comma. Unannotated
/// rules are named r<N> by 1-based position. Predicate aliases are mapped to
/// canonical names and constants are normalized to identifiers.
[[nodiscard]] std::vector<RuleAst> parse_ruleset(std::string_view text, std::string source_name = {});

/// Parses exactly one rule (an optional @id directive is allowed).
[[nodiscard]] RuleAst parse_rule(std::string_view text);

[[nodiscard]] std::string format_atom(const Atom& atom);

/// Single-line canonical text of the rule body, without its id.
[[nodiscard]] std::string format_rule(const RuleAst& rule);

/// Rules separated by blank lines, each preceded by an `@id` line, so that
/// parse_ruleset(format_ruleset(rs)) == rs.
[[nodiscard]] std::string format_ruleset(const std::vector<RuleAst>& rules);

}  // namespace unani::rules
