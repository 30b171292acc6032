#include <algorithm>

#include "unani/inference/engine.hpp"
#include "unani/rules/canonicalize.hpp"

namespace unani::inference {

namespace {

using json = nlohmann::json;

std::vector<PlanItem>* list_for(TreatmentPlan& plan, rules::Predicate p) {
  switch (p) {
    case rules::Predicate::treatment_principles: return &plan.principle;
    case rules::Predicate::regimental_therapy: return &plan.regimental;
    case rules::Predicate::prevention: return &plan.prevention;
    default: return nullptr;
  }
}

rules::Predicate predicate_for(kb::TreatmentCategory c) {
  switch (c) {
    case kb::TreatmentCategory::principle: return rules::Predicate::treatment_principles;
    case kb::TreatmentCategory::regimental: return rules::Predicate::regimental_therapy;
    case kb::TreatmentCategory::prevention: return rules::Predicate::prevention;
  }
  return rules::Predicate::treatment_principles;
}

void add_item(std::vector<PlanItem>& list, const kb::KnowledgeBase& kb, const std::string& id,
              const std::string& source) {
  auto it = std::find_if(list.begin(), list.end(), [&](const PlanItem& p) { return p.id == id; });
  if (it == list.end()) {
    const kb::TreatmentItem* t = kb.find_treatment(id);
    list.push_back({id, t != nullptr && !t->label.empty() ? t->label : id, {source}});
    return;
  }
  if (std::find(it->sources.begin(), it->sources.end(), source) == it->sources.end()) {
    it->sources.push_back(source);
  }
}

json items_to_json(const std::vector<PlanItem>& items) {
  json out = json::array();
  for (const auto& i : items) out.push_back({{"id", i.id}, {"label", i.label}, {"sources", i.sources}});
  return out;
}

std::vector<PlanItem> items_from_json(const json& j) {
  std::vector<PlanItem> out;
  for (const auto& i : j) {
    out.push_back({i.at("id").get<std::string>(), i.at("label").get<std::string>(),
                   i.at("sources").get<std::vector<std::string>>()});
  }
  return out;
}

}  // namespace

std::vector<std::string> TreatmentPlan::ids(rules::Predicate family) const {
  const std::vector<PlanItem>* list = family == rules::Predicate::treatment_principles ? &principle
                                      : family == rules::Predicate::regimental_therapy ? &regimental
                                      : family == rules::Predicate::prevention         ? &prevention
                                                                                       : nullptr;
  std::vector<std::string> out;
  if (list != nullptr) {
    for (const auto& i : *list) out.push_back(i.id);
  }
  return out;
}

json plan_to_json(const TreatmentPlan& plan) {
  return {{"principle", items_to_json(plan.principle)},
          {"regimental", items_to_json(plan.regimental)},
          {"prevention", items_to_json(plan.prevention)}};
}

TreatmentPlan plan_from_json(const json& doc) {
  try {
    return {items_from_json(doc.at("principle")), items_from_json(doc.at("regimental")),
            items_from_json(doc.at("prevention"))};
  } catch (const json::exception& ex) {
    throw InferenceError("malformed_document", ex.what());
  }
}

TreatmentPlan recommend_treatments(const kb::KnowledgeBase& kb, const std::vector<rules::RuleAst>& rules,
                                   const std::string& disease_id) {
  if (kb.find_disease(disease_id) == nullptr) {
    throw InferenceError("unknown_disease", "unknown disease: " + disease_id);
  }
  const auto canon = rules::canonicalize_ruleset(rules);
  const GroundAtom seed{rules::Predicate::disease, disease_id};
  const WorkingMemory wm = forward_chain(canon, WorkingMemory(std::span(&seed, 1)));

  TreatmentPlan plan;
  std::set<std::string> derived;
  for (const auto& r : canon) {
    const bool fired = std::all_of(r.antecedents.begin(), r.antecedents.end(),
                                   [&](const rules::Atom& a) { return wm.contains(ground(a)); });
    if (!fired) continue;
    for (const auto& c : r.consequents) {
      auto* list = list_for(plan, c.predicate);
      if (list == nullptr) continue;
      add_item(*list, kb, c.constant, r.id);
      derived.insert(c.constant);
    }
  }
  for (const auto& id : kb.treatments_of(disease_id)) {
    if (derived.contains(id)) continue;
    const kb::TreatmentItem* t = kb.find_treatment(id);
    if (t == nullptr) continue;
    add_item(*list_for(plan, predicate_for(t->category)), kb, id, "kb");
  }
  return plan;
}

}  // namespace unani::inference
