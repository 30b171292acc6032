#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unani/common/error.hpp"
#include "unani/common/validation.hpp"
#include "unani/knowledge/types.hpp"

namespace unani::kb {

class KbError : public Error {
 public:
  using Error::Error;
};

/// Disease-finding-treatment graph. Immutable once built: every mutating
/// operation is a free function returning a new value, so one instance can be
/// shared across threads without locking.
class KnowledgeBase {
 public:
  using FindingMap = std::map<std::string, Finding>;
  using DiseaseMap = std::map<std::string, Disease>;
  using TreatmentMap = std::map<std::string, TreatmentItem>;

  KnowledgeBase() = default;
  KnowledgeBase(FindingMap findings, DiseaseMap diseases, TreatmentMap treatments,
                std::set<FindingEdge> finding_edges, std::set<TreatmentEdge> treatment_edges);

  [[nodiscard]] const FindingMap& findings() const noexcept { return findings_; }
  [[nodiscard]] const DiseaseMap& diseases() const noexcept { return diseases_; }
  [[nodiscard]] const TreatmentMap& treatments() const noexcept { return treatments_; }
  [[nodiscard]] const std::set<FindingEdge>& finding_edges() const noexcept { return finding_edges_; }
  [[nodiscard]] const std::set<TreatmentEdge>& treatment_edges() const noexcept {
    return treatment_edges_;
  }

  [[nodiscard]] const Finding* find_finding(std::string_view id) const;
  [[nodiscard]] const Disease* find_disease(std::string_view id) const;
  [[nodiscard]] const TreatmentItem* find_treatment(std::string_view id) const;

  /// Finding ids attached to `disease_id`, ascending.
  [[nodiscard]] std::vector<std::string> findings_of(std::string_view disease_id) const;
  /// Treatment ids attached to `disease_id`, ascending.
  [[nodiscard]] std::vector<std::string> treatments_of(std::string_view disease_id) const;

  [[nodiscard]] std::size_t node_count() const noexcept {
    return findings_.size() + diseases_.size() + treatments_.size();
  }
  [[nodiscard]] std::size_t edge_count() const noexcept {
    return finding_edges_.size() + treatment_edges_.size();
  }
  [[nodiscard]] bool empty() const noexcept { return node_count() == 0 && edge_count() == 0; }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  FindingMap findings_;
  DiseaseMap diseases_;
  TreatmentMap treatments_;
  std::set<FindingEdge> finding_edges_;
  std::set<TreatmentEdge> treatment_edges_;
};

/// Lists every violated structural invariant; empty iff well-formed.
[[nodiscard]] ValidationReport kb_validate(const KnowledgeBase& kb);

/// Inserts or replaces one disease. Missing findings and treatments are
/// created; existing ones keep their kind/category (a conflicting kind is an
/// error), take the new label and merge synonyms. The disease's edge sets are
/// replaced by exactly the given lists. Idempotent on identical input.
[[nodiscard]] KnowledgeBase kb_upsert_disease(const KnowledgeBase& kb, const Disease& disease,
                                              const std::vector<Finding>& findings,
                                              const std::vector<TreatmentItem>& treatments);

/// Diseases carrying `finding_id`, ascending. Throws KbError(unknown_finding).
[[nodiscard]] std::vector<std::string> kb_find_diseases_by_finding(const KnowledgeBase& kb,
                                                                   std::string_view finding_id);

}  // namespace unani::kb
