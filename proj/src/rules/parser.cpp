#include "unani/rules/parser.hpp"

#include <algorithm>

#include "lexer.hpp"
#include "unani/common/identifier.hpp"

namespace unani::rules {
namespace {

using detail::Lexer;
using detail::Token;
using detail::TokenType;

class Parser {
 public:
  Parser(std::string_view text, std::string source) : lexer_(text), source_(std::move(source)) {
    current_ = lexer_.next();
  }

  std::vector<RuleAst> parse_all() {
    std::vector<RuleAst> rules;
    while (current_.type != TokenType::end) {
      rules.push_back(parse_one(rules.size() + 1));
    }
    return rules;
  }

  RuleAst parse_single() {
    if (current_.type == TokenType::end) throw RuleError("syntax_error", "expected a rule", current_.line, current_.column);
    RuleAst rule = parse_one(1);
    if (current_.type != TokenType::end) {
      throw RuleError("syntax_error", "expected end of input after the rule, found " + found(), current_.line,
                      current_.column);
    }
    return rule;
  }

 private:
  std::string found() const {
    if (current_.type == TokenType::end) return "end of input";
    return "'" + current_.text + "'";
  }

  Token expect(TokenType type, const char* context) {
    if (current_.type != type) {
      throw RuleError("syntax_error",
                      std::string("expected ") + detail::describe(type) + " " + context + ", found " + found(),
                      current_.line, current_.column);
    }
    Token tok = current_;
    current_ = lexer_.next();
    return tok;
  }

  RuleAst parse_one(std::size_t position) {
    RuleAst rule;
    rule.provenance = {source_, current_.line, current_.column};
    if (current_.type == TokenType::rule_id) {
      rule.id = current_.text;
      current_ = lexer_.next();
      rule.provenance.line = current_.line;
      rule.provenance.column = current_.column;
    } else {
      rule.id = "r" + std::to_string(position);
    }

    rule.antecedents = parse_atoms("in rule body");
    expect(TokenType::arrow, "between antecedents and consequents");
    rule.consequents = parse_atoms("after '->'");
    check(rule);
    return rule;
  }

  std::vector<Atom> parse_atoms(const char* context) {
    std::vector<Atom> atoms;
    atoms.push_back(parse_atom(context));
    while (current_.type == TokenType::comma) {
      current_ = lexer_.next();
      atoms.push_back(parse_atom("after ','"));
    }
    return atoms;
  }

  Atom parse_atom(const char* context) {
    const Token pred = expect(TokenType::identifier, context);
    const auto predicate = parse_predicate(pred.text);
    if (!predicate) {
      throw RuleError("unknown_predicate", "unknown predicate '" + pred.text + "'", pred.line, pred.column);
    }
    expect(TokenType::lparen, "after predicate");
    expect(TokenType::question, "before the case variable");
    const Token var = expect(TokenType::identifier, "as the case variable");
    expect(TokenType::comma, "after the case variable");
    const Token constant = expect(TokenType::identifier, "as the atom constant");
    expect(TokenType::rparen, "to close the atom");

    std::string id = normalize_identifier(constant.text);
    if (!is_valid_identifier(id)) {
      throw RuleError("invalid_constant", "constant '" + constant.text + "' does not normalize to a valid id",
                      constant.line, constant.column);
    }
    return Atom{*predicate, var.text, std::move(id)};
  }

  void check(RuleAst& rule) {
    const auto& loc = rule.provenance;
    const std::string& variable = rule.antecedents.front().variable;
    auto same_var = [&](const Atom& a) { return a.variable == variable; };
    if (!std::all_of(rule.antecedents.begin(), rule.antecedents.end(), same_var) ||
        !std::all_of(rule.consequents.begin(), rule.consequents.end(), same_var)) {
      throw RuleError("multiple_variables", "rule " + rule.id + " must use a single case variable", loc.line,
                      loc.column);
    }
    for (const auto* side : {&rule.antecedents, &rule.consequents}) {
      auto sorted = *side;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw RuleError("duplicate_atom", "rule " + rule.id + " repeats an atom", loc.line, loc.column);
      }
    }
    const auto kind = infer_kind(rule.antecedents, rule.consequents);
    if (!kind) {
      auto is_disease = [](const Atom& a) { return a.predicate == Predicate::disease; };
      const bool both = std::any_of(rule.antecedents.begin(), rule.antecedents.end(), is_disease) &&
                        std::any_of(rule.consequents.begin(), rule.consequents.end(), is_disease);
      throw RuleError("mixed_rule_kind",
                      "rule " + rule.id +
                          (both ? " has Disease atoms on both sides"
                                : " is neither diagnostic (evidence -> Disease) nor prescriptive (Disease -> treatments)"),
                      loc.line, loc.column);
    }
    rule.kind = *kind;
  }

  Lexer lexer_;
  std::string source_;
  Token current_;
};

}  // namespace

std::vector<RuleAst> parse_ruleset(std::string_view text, std::string source_name) {
  return Parser(text, std::move(source_name)).parse_all();
}

RuleAst parse_rule(std::string_view text) { return Parser(text, {}).parse_single(); }

std::string format_atom(const Atom& atom) {
  return std::string(to_string(atom.predicate)) + "(?" + atom.variable + ", " + atom.constant + ")";
}

std::string format_rule(const RuleAst& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_atom(rule.antecedents[i]);
  }
  out += " -> ";
  for (std::size_t i = 0; i < rule.consequents.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_atom(rule.consequents[i]);
  }
  return out;
}

std::string format_ruleset(const std::vector<RuleAst>& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i > 0) out += "\n";
    out += "@id " + rules[i].id + "\n" + format_rule(rules[i]) + "\n";
  }
  return out;
}

}  // namespace unani::rules
