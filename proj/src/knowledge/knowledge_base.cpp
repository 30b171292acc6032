#include "unani/knowledge/knowledge_base.hpp"

#include <algorithm>

#include "unani/common/identifier.hpp"

namespace unani::kb {

const char* to_string(FindingKind kind) noexcept {
  return kind == FindingKind::symptom ? "symptom" : "cause";
}

const char* to_string(TreatmentCategory category) noexcept {
  switch (category) {
    case TreatmentCategory::principle: return "principle";
    case TreatmentCategory::regimental: return "regimental";
    case TreatmentCategory::prevention: return "prevention";
  }
  return "principle";
}

std::optional<FindingKind> parse_finding_kind(std::string_view text) noexcept {
  if (text == "symptom") return FindingKind::symptom;
  if (text == "cause") return FindingKind::cause;
  return std::nullopt;
}

std::optional<TreatmentCategory> parse_treatment_category(std::string_view text) noexcept {
  if (text == "principle") return TreatmentCategory::principle;
  if (text == "regimental") return TreatmentCategory::regimental;
  if (text == "prevention") return TreatmentCategory::prevention;
  return std::nullopt;
}

KnowledgeBase::KnowledgeBase(FindingMap findings, DiseaseMap diseases, TreatmentMap treatments,
                             std::set<FindingEdge> finding_edges,
                             std::set<TreatmentEdge> treatment_edges)
    : findings_(std::move(findings)),
      diseases_(std::move(diseases)),
      treatments_(std::move(treatments)),
      finding_edges_(std::move(finding_edges)),
      treatment_edges_(std::move(treatment_edges)) {}

namespace {

template <typename Map>
const typename Map::mapped_type* lookup(const Map& map, std::string_view id) {
  auto it = map.find(std::string(id));
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

const Finding* KnowledgeBase::find_finding(std::string_view id) const { return lookup(findings_, id); }
const Disease* KnowledgeBase::find_disease(std::string_view id) const { return lookup(diseases_, id); }
const TreatmentItem* KnowledgeBase::find_treatment(std::string_view id) const {
  return lookup(treatments_, id);
}

std::vector<std::string> KnowledgeBase::findings_of(std::string_view disease_id) const {
  std::vector<std::string> out;
  auto it = finding_edges_.lower_bound(FindingEdge{std::string(disease_id), ""});
  for (; it != finding_edges_.end() && it->disease_id == disease_id; ++it) out.push_back(it->finding_id);
  return out;
}

std::vector<std::string> KnowledgeBase::treatments_of(std::string_view disease_id) const {
  std::vector<std::string> out;
  auto it = treatment_edges_.lower_bound(TreatmentEdge{std::string(disease_id), ""});
  for (; it != treatment_edges_.end() && it->disease_id == disease_id; ++it) {
    out.push_back(it->treatment_id);
  }
  return out;
}

ValidationReport kb_validate(const KnowledgeBase& kb) {
  ValidationReport report;

  for (const auto& [key, finding] : kb.findings()) {
    if (key != finding.id) report.add("key_mismatch", "finding:" + key, "map key differs from id '" + finding.id + "'");
    if (!is_valid_identifier(finding.id)) {
      report.add("invalid_identifier", "finding:" + finding.id, "finding id must match [a-z][a-z0-9_]*");
    }
    for (const auto& synonym : finding.synonyms) {
      if (synonym.empty() || collapse_whitespace(synonym) != synonym ||
          std::any_of(synonym.begin(), synonym.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
        report.add("invalid_synonym", "finding:" + finding.id,
                   "synonym '" + synonym + "' must be a non-empty lowercase phrase");
      }
      if (synonym != finding.id && kb.find_finding(synonym) != nullptr) {
        report.add("synonym_collision", "finding:" + finding.id,
                   "synonym '" + synonym + "' collides with another finding id");
      }
    }
  }

  for (const auto& [key, disease] : kb.diseases()) {
    if (key != disease.id) report.add("key_mismatch", "disease:" + key, "map key differs from id '" + disease.id + "'");
    if (!is_valid_identifier(disease.id)) {
      report.add("invalid_identifier", "disease:" + disease.id, "disease id must match [a-z][a-z0-9_]*");
    }
    if (disease.name.empty()) report.add("empty_disease_name", "disease:" + disease.id, "disease name is empty");
  }

  for (const auto& [key, item] : kb.treatments()) {
    if (key != item.id) report.add("key_mismatch", "treatment:" + key, "map key differs from id '" + item.id + "'");
    if (!is_valid_identifier(item.id)) {
      report.add("invalid_identifier", "treatment:" + item.id, "treatment id must match [a-z][a-z0-9_]*");
    }
  }

  std::set<std::string> diseases_with_findings;
  for (const auto& edge : kb.finding_edges()) {
    const bool disease_ok = kb.find_disease(edge.disease_id) != nullptr;
    const bool finding_ok = kb.find_finding(edge.finding_id) != nullptr;
    if (!disease_ok || !finding_ok) {
      report.add("dangling_finding_edge", edge.disease_id + "->" + edge.finding_id,
                 !disease_ok ? "edge source is not a known disease" : "edge target is not a known finding");
    } else {
      diseases_with_findings.insert(edge.disease_id);
    }
  }
  for (const auto& edge : kb.treatment_edges()) {
    const bool disease_ok = kb.find_disease(edge.disease_id) != nullptr;
    const bool treatment_ok = kb.find_treatment(edge.treatment_id) != nullptr;
    if (!disease_ok || !treatment_ok) {
      report.add("dangling_treatment_edge", edge.disease_id + "->" + edge.treatment_id,
                 !disease_ok ? "edge source is not a known disease" : "edge target is not a known treatment");
    }
  }

  for (const auto& [id, disease] : kb.diseases()) {
    if (!diseases_with_findings.contains(id)) {
      report.add("disease_without_findings", "disease:" + id, "disease has no finding edge");
    }
  }
  return report;
}

KnowledgeBase kb_upsert_disease(const KnowledgeBase& kb, const Disease& disease,
                                const std::vector<Finding>& findings,
                                const std::vector<TreatmentItem>& treatments) {
  if (!is_valid_identifier(disease.id)) {
    throw KbError("invalid_identifier", "malformed disease id '" + disease.id + "'");
  }
  if (disease.name.empty()) throw KbError("empty_disease_name", "disease '" + disease.id + "' has no name");

  auto finding_map = kb.findings();
  auto disease_map = kb.diseases();
  auto treatment_map = kb.treatments();
  auto finding_edges = kb.finding_edges();
  auto treatment_edges = kb.treatment_edges();

  for (const auto& finding : findings) {
    if (!is_valid_identifier(finding.id)) {
      throw KbError("invalid_identifier", "malformed finding id '" + finding.id + "'");
    }
    auto [it, inserted] = finding_map.try_emplace(finding.id, finding);
    if (!inserted) {
      if (it->second.kind != finding.kind) {
        throw KbError("kind_conflict", "finding '" + finding.id + "' is already a " +
                                           to_string(it->second.kind));
      }
      it->second.label = finding.label;
      it->second.synonyms.insert(finding.synonyms.begin(), finding.synonyms.end());
    }
  }
  for (const auto& item : treatments) {
    if (!is_valid_identifier(item.id)) {
      throw KbError("invalid_identifier", "malformed treatment id '" + item.id + "'");
    }
    auto [it, inserted] = treatment_map.try_emplace(item.id, item);
    if (!inserted) {
      if (it->second.category != item.category) {
        throw KbError("category_conflict", "treatment '" + item.id + "' is already a " +
                                               to_string(it->second.category) + " item");
      }
      it->second.label = item.label;
    }
  }

  disease_map[disease.id] = disease;
  std::erase_if(finding_edges, [&](const FindingEdge& e) { return e.disease_id == disease.id; });
  std::erase_if(treatment_edges, [&](const TreatmentEdge& e) { return e.disease_id == disease.id; });
  for (const auto& finding : findings) finding_edges.insert({disease.id, finding.id});
  for (const auto& item : treatments) treatment_edges.insert({disease.id, item.id});

  return KnowledgeBase(std::move(finding_map), std::move(disease_map), std::move(treatment_map),
                       std::move(finding_edges), std::move(treatment_edges));
}

std::vector<std::string> kb_find_diseases_by_finding(const KnowledgeBase& kb,
                                                     std::string_view finding_id) {
  if (kb.find_finding(finding_id) == nullptr) {
    throw KbError("unknown_finding", "unknown finding id '" + std::string(finding_id) + "'");
  }
  std::vector<std::string> out;
  for (const auto& edge : kb.finding_edges()) {
    if (edge.finding_id == finding_id) out.push_back(edge.disease_id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace unani::kb
