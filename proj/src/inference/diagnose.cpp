#include <algorithm>
#include <cmath>

#include "unani/inference/engine.hpp"
#include "unani/rules/canonicalize.hpp"

namespace unani::inference {

namespace {

using json = nlohmann::json;

double weight_of(rules::Predicate p, const KindWeights& w) {
  return p == rules::Predicate::causes ? w.cause : w.symptom;
}

GroundAtom finding_atom(const kb::Finding& f) {
  return {f.kind == kb::FindingKind::cause ? rules::Predicate::causes : rules::Predicate::symptoms, f.id};
}

void check_params(const DiagnosisParams& p) {
  if (!(p.threshold >= 0.0 && p.threshold <= 1.0)) {
    throw InferenceError("invalid_params", "threshold must lie in [0, 1]");
  }
  auto positive = [](double w) { return std::isfinite(w) && w > 0.0; };
  if (!positive(p.kind_weights.symptom) || !positive(p.kind_weights.cause)) {
    throw InferenceError("invalid_params", "kind weights must be positive");
  }
}

}  // namespace

const DifferentialEntry* Differential::find(std::string_view disease_id) const {
  for (const auto& e : entries) {
    if (e.disease_id == disease_id) return &e;
  }
  return nullptr;
}

void rank_entries(std::vector<DifferentialEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.disease_id < b.disease_id;
  });
}

json differential_to_json(const Differential& differential) {
  json out = json::array();
  for (const auto& e : differential.entries) {
    json matched = json::array();
    for (const auto& m : e.matched) {
      matched.push_back({{"predicate", rules::to_string(m.predicate)}, {"constant", m.constant}});
    }
    out.push_back({{"disease_id", e.disease_id},
                   {"score", e.score},
                   {"matched", std::move(matched)},
                   {"missing", e.missing},
                   {"fired_rules", e.fired_rules}});
  }
  return out;
}

Differential differential_from_json(const json& entries) {
  Differential d;
  if (!entries.is_array()) throw InferenceError("malformed_document", "differential must be an array");
  try {
    for (const auto& j : entries) {
      DifferentialEntry e;
      e.disease_id = j.at("disease_id").get<std::string>();
      e.score = j.at("score").get<double>();
      for (const auto& m : j.at("matched")) {
        auto p = rules::parse_predicate(m.at("predicate").get<std::string>());
        if (!p) throw InferenceError("malformed_document", "unknown predicate in differential");
        e.matched.insert({*p, m.at("constant").get<std::string>()});
      }
      e.missing = j.at("missing").get<std::set<std::string>>();
      e.fired_rules = j.at("fired_rules").get<std::vector<std::string>>();
      d.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw InferenceError("malformed_document", ex.what());
  }
  return d;
}

Differential diagnose(const kb::KnowledgeBase& kb, const std::vector<rules::RuleAst>& rules,
                      const std::set<std::string>& findings, const DiagnosisParams& params) {
  check_params(params);
  if (findings.empty()) throw InferenceError("empty_findings", "no findings given");

  Differential out;
  std::vector<GroundAtom> facts;
  for (const auto& id : findings) {
    const kb::Finding* f = kb.find_finding(id);
    if (f == nullptr) {
      if (params.strict_vocabulary) throw InferenceError("unknown_finding", "unknown finding: " + id);
      out.warnings.push_back("unknown finding ignored: " + id);
      continue;
    }
    facts.push_back(finding_atom(*f));
  }

  const auto canon = rules::canonicalize_ruleset(rules);
  const WorkingMemory wm = forward_chain(canon, WorkingMemory(facts));

  struct Evidence {
    std::set<GroundAtom> atoms;
    std::vector<std::string> fired;
  };
  std::map<std::string, Evidence> by_disease;
  for (const auto& r : canon) {
    if (r.kind != rules::RuleKind::diagnostic) continue;
    const bool fired = std::all_of(r.antecedents.begin(), r.antecedents.end(),
                                   [&](const rules::Atom& a) { return wm.contains(ground(a)); });
    for (const auto& c : r.consequents) {
      if (c.predicate != rules::Predicate::disease) continue;
      auto& ev = by_disease[c.constant];
      for (const auto& a : r.antecedents) ev.atoms.insert(ground(a));
      if (fired) ev.fired.push_back(r.id);
    }
  }

  for (auto& [disease, ev] : by_disease) {
    DifferentialEntry e;
    e.disease_id = disease;
    double total = 0.0;
    double hit = 0.0;
    for (const auto& a : ev.atoms) {
      const double w = weight_of(a.predicate, params.kind_weights);
      total += w;
      if (wm.contains(a)) {
        hit += w;
        e.matched.insert(a);
      } else {
        e.missing.insert(a.constant);
      }
    }
    if (e.matched.empty() || total <= 0.0) continue;
    e.score = e.matched.size() == ev.atoms.size() ? 1.0 : hit / total;
    if (e.score < params.threshold) continue;
    std::sort(ev.fired.begin(), ev.fired.end());
    ev.fired.erase(std::unique(ev.fired.begin(), ev.fired.end()), ev.fired.end());
    e.fired_rules = std::move(ev.fired);
    out.entries.push_back(std::move(e));
  }
  rank_entries(out.entries);
  return out;
}

}  // namespace unani::inference
