#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unani/common/error.hpp"
#include "unani/inference/engine.hpp"
#include "unani/knowledge/knowledge_base.hpp"

namespace unani::learning {

class LearningError : public Error {
 public:
  using Error::Error;
};

/// Sorted, duplicate-free finding ids; position i is bit i of every vector.
struct FeatureSpace {
  std::vector<std::string> features;

  [[nodiscard]] std::size_t size() const noexcept { return features.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;
};

using FeatureVector = std::vector<bool>;

enum class RowOrigin { source, augmented };

[[nodiscard]] const char* to_string(RowOrigin origin) noexcept;

struct LabeledRow {
  FeatureVector vector;
  std::string label;
  RowOrigin origin = RowOrigin::source;

  friend bool operator==(const LabeledRow&, const LabeledRow&) = default;
};

struct LabeledDataset {
  FeatureSpace space;
  std::vector<LabeledRow> rows;

  [[nodiscard]] std::size_t count(RowOrigin origin) const;
  [[nodiscard]] std::set<std::string> labels() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// One source row per disease over the space of all finding ids.
/// Throws LearningError(empty_kb) when the KB has no diseases.
[[nodiscard]] LabeledDataset kb_to_dataset(const kb::KnowledgeBase& kb);

/// Bit vector of `findings` over `space`; ids outside the space are ignored.
[[nodiscard]] FeatureVector encode(const FeatureSpace& space, const std::set<std::string>& findings);

[[nodiscard]] std::size_t popcount(const FeatureVector& v) noexcept;

/// Header: feature ids, then `label`, then `origin`. Cells are 0/1.
[[nodiscard]] std::string dataset_to_csv(const LabeledDataset& ds);
/// Throws LearningError(malformed_csv).
[[nodiscard]] LabeledDataset dataset_from_csv(std::string_view text);

/// Probability map as a Differential (score = probability, evidence empty).
[[nodiscard]] inference::Differential distribution_to_differential(const std::map<std::string, double>& dist);

}  // namespace unani::learning
