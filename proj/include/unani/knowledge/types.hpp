#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace unani::kb {

enum class FindingKind { symptom, cause };

/// The three treatment families that carry rule encodings.
enum class TreatmentCategory { principle, regimental, prevention };

[[nodiscard]] const char* to_string(FindingKind kind) noexcept;
[[nodiscard]] const char* to_string(TreatmentCategory category) noexcept;
[[nodiscard]] std::optional<FindingKind> parse_finding_kind(std::string_view text) noexcept;
[[nodiscard]] std::optional<TreatmentCategory> parse_treatment_category(std::string_view text) noexcept;

struct Finding {
  std::string id;
  FindingKind kind = FindingKind::symptom;
  std::string label;
  std::set<std::string> synonyms;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct Disease {
  std::string id;
  std::string name;
  std::optional<std::string> alt_name;
  std::string description;

  friend bool operator==(const Disease&, const Disease&) = default;
};

struct TreatmentItem {
  std::string id;
  TreatmentCategory category = TreatmentCategory::principle;
  std::string label;

  friend bool operator==(const TreatmentItem&, const TreatmentItem&) = default;
};

struct FindingEdge {
  std::string disease_id;
  std::string finding_id;

  friend auto operator<=>(const FindingEdge&, const FindingEdge&) = default;
};

struct TreatmentEdge {
  std::string disease_id;
  std::string treatment_id;

  friend auto operator<=>(const TreatmentEdge&, const TreatmentEdge&) = default;
};

}  // namespace unani::kb
