#include "unani/service/engines.hpp"

#include "unani/learning/augment.hpp"
#include "unani/rules/canonicalize.hpp"

namespace unani::service {

Engines build_engines(kb::KnowledgeBase kb, const std::vector<rules::RuleAst>& rules,
                      const std::vector<std::string>& templates) {
  Engines e;
  e.rules = rules::canonicalize_ruleset(rules);
  const auto ds = learning::augment_leave_one_out(learning::kb_to_dataset(kb), 1);
  learning::TreeParams params;
  params.max_depth = static_cast<int>(ds.space.size());
  e.tree = learning::train_decision_tree(ds, params);
  e.text = learning::train_text_classifier(learning::generate_prompts(kb, templates));
  e.kb = std::move(kb);
  return e;
}

inference::Differential run_engine(const Engines& engines, EngineKind engine, const std::set<std::string>& findings,
                                   const std::string& text, const inference::DiagnosisParams& params) {
  switch (engine) {
    case EngineKind::rules:
      return inference::diagnose(engines.kb, engines.rules, findings, params);
    case EngineKind::tree: {
      const auto p = learning::tree_predict(engines.tree, learning::encode(engines.tree.space, findings));
      return learning::distribution_to_differential(p.distribution);
    }
    case EngineKind::text:
      return learning::classify_text(engines.text, text);
  }
  throw ApiError(400, "unknown_engine", "unknown engine");
}

}  // namespace unani::service
