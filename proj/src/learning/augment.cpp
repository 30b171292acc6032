#include "unani/learning/augment.hpp"

#include <map>

namespace unani::learning {

LabeledDataset augment_leave_one_out(const LabeledDataset& ds, int depth) {
  if (depth < 0) throw LearningError("invalid_depth", "depth must be non-negative");

  std::map<FeatureVector, std::set<std::string>> claimed;
  for (const auto& r : ds.rows) {
    if (r.origin == RowOrigin::source && claimed.contains(r.vector)) {
      throw LearningError("duplicate_vector", "source rows must have unique vectors (label " + r.label + ")");
    }
    claimed[r.vector].insert(r.label);
  }

  LabeledDataset out = ds;
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].origin == RowOrigin::source) frontier.push_back(i);
  }

  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<std::pair<FeatureVector, std::string>> candidates;
    std::map<FeatureVector, std::set<std::string>> level_claims;
    for (std::size_t i : frontier) {
      const auto& row = out.rows[i];
      for (std::size_t b = 0; b < row.vector.size(); ++b) {
        if (!row.vector[b]) continue;
        FeatureVector v = row.vector;
        v[b] = false;
        if (popcount(v) == 0) continue;
        level_claims[v].insert(row.label);
        candidates.emplace_back(std::move(v), row.label);
      }
    }

    std::vector<std::size_t> next;
    for (auto& [v, label] : candidates) {
      const auto& rivals = level_claims[v];
      if (rivals.size() > 1) continue;
      auto it = claimed.find(v);
      if (it != claimed.end()) continue;  // another label, or already present for this one
      claimed[v].insert(label);
      next.push_back(out.rows.size());
      out.rows.push_back({std::move(v), label, RowOrigin::augmented});
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace unani::learning
