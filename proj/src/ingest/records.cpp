#include "unani/ingest/records.hpp"

#include <map>

namespace unani::ingest {
namespace {

struct FindingDraft {
  kb::FindingKind kind;
  std::string label;
  std::set<std::string> synonyms;
};

// Labels of items shared across diseases may differ in spelling; the smallest
// one wins so the outcome does not depend on record order.
void merge_label(std::string& current, const std::string& candidate) {
  if (candidate < current) current = candidate;
}

}  // namespace

kb::KnowledgeBase records_to_kb(const std::vector<DiseaseRecord>& records) {
  kb::KnowledgeBase::DiseaseMap diseases;
  std::map<std::string, FindingDraft> findings;
  kb::KnowledgeBase::TreatmentMap treatments;
  std::set<kb::FindingEdge> finding_edges;
  std::set<kb::TreatmentEdge> treatment_edges;

  for (const auto& record : records) {
    kb::Disease disease{record.disease_id, record.disease, record.alt_name, ""};
    if (!diseases.emplace(disease.id, disease).second) {
      throw IngestError("duplicate_disease", "disease '" + disease.id + "' is defined by more than one block");
    }

    auto add_findings = [&](const std::vector<RecordItem>& items, kb::FindingKind kind) {
      for (const auto& item : items) {
        auto [it, inserted] = findings.try_emplace(
            item.id, FindingDraft{kind, item.label, {item.synonyms.begin(), item.synonyms.end()}});
        if (!inserted) {
          if (it->second.kind != kind) {
            throw IngestError("finding_kind_collision",
                              "'" + item.id + "' is tagged both as a symptom and as a cause");
          }
          merge_label(it->second.label, item.label);
          it->second.synonyms.insert(item.synonyms.begin(), item.synonyms.end());
        }
        finding_edges.insert({record.disease_id, item.id});
      }
    };
    add_findings(record.symptoms, kb::FindingKind::symptom);
    add_findings(record.causes, kb::FindingKind::cause);

    auto add_treatments = [&](const std::vector<RecordItem>& items, kb::TreatmentCategory category) {
      for (const auto& item : items) {
        auto [it, inserted] = treatments.try_emplace(item.id, kb::TreatmentItem{item.id, category, item.label});
        if (!inserted) {
          if (it->second.category != category) {
            throw IngestError("treatment_category_collision",
                              "'" + item.id + "' is tagged as both " + kb::to_string(it->second.category) +
                                  " and " + kb::to_string(category));
          }
          merge_label(it->second.label, item.label);
        }
        treatment_edges.insert({record.disease_id, item.id});
      }
    };
    add_treatments(record.principles, kb::TreatmentCategory::principle);
    add_treatments(record.regimental, kb::TreatmentCategory::regimental);
    add_treatments(record.preventions, kb::TreatmentCategory::prevention);
  }

  kb::KnowledgeBase::FindingMap finding_map;
  for (auto& [id, draft] : findings) {
    finding_map.emplace(id, kb::Finding{id, draft.kind, std::move(draft.label), std::move(draft.synonyms)});
  }

  kb::KnowledgeBase result(std::move(finding_map), std::move(diseases), std::move(treatments),
                           std::move(finding_edges), std::move(treatment_edges));
  const auto report = kb::kb_validate(result);
  if (!report.empty()) {
    const auto& v = report.violations.front();
    throw IngestError("invalid_kb", "ingested records do not form a valid knowledge base: " + v.code + " (" +
                                        v.subject + "): " + v.message);
  }
  return result;
}

}  // namespace unani::ingest
