#pragma once

#include <set>
#include <string>
#include <vector>

#include "unani/inference/engine.hpp"
#include "unani/knowledge/knowledge_base.hpp"
#include "unani/learning/decision_tree.hpp"
#include "unani/learning/text_classifier.hpp"
#include "unani/rules/ast.hpp"
#include "unani/service/records.hpp"

namespace unani::service {

/// Read-only inference state shared by all requests.
struct Engines {
  kb::KnowledgeBase kb;
  std::vector<rules::RuleAst> rules;  // canonical form
  learning::DecisionTree tree;
  learning::TextModel text;
};

/// Canonicalizes the rules, trains the tree on the KB dataset augmented to
/// depth 1, and trains the text model on prompts from `templates`.
[[nodiscard]] Engines build_engines(kb::KnowledgeBase kb, const std::vector<rules::RuleAst>& rules,
                                    const std::vector<std::string>& templates);

/// `findings` feed the rules and tree engines, `text` the text engine.
[[nodiscard]] inference::Differential run_engine(const Engines& engines, EngineKind engine,
                                                 const std::set<std::string>& findings, const std::string& text,
                                                 const inference::DiagnosisParams& params);

}  // namespace unani::service
