#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "unani/learning/dataset.hpp"

namespace unani::learning {

struct TreeParams {
  int max_depth = 64;
  int min_samples_leaf = 1;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  int absent = -1;   // child index when the feature bit is 0
  int present = -1;  // child index when the feature bit is 1
  std::string label;
  std::map<std::string, int> counts;

  [[nodiscard]] bool is_leaf() const noexcept { return feature < 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// nodes[0] is the root.
struct DecisionTree {
  FeatureSpace space;
  std::vector<TreeNode> nodes;

  [[nodiscard]] int depth() const;
  [[nodiscard]] std::size_t leaf_count() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct Prediction {
  std::string label;
  std::map<std::string, double> distribution;
};

/// CART-style greedy tree with the Gini criterion. Splits are compared with
/// exact integer arithmetic; ties go to the lowest feature index. A split
/// with zero gain is still taken when it separates the rows, so label-unique
/// data is always fit exactly given enough depth. Leaves take the majority
/// label, ties to the smallest label. Throws LearningError(empty_dataset) or
/// LearningError(invalid_params).
[[nodiscard]] DecisionTree train_decision_tree(const LabeledDataset& ds, const TreeParams& params = {});

/// Throws LearningError(length_mismatch).
[[nodiscard]] Prediction tree_predict(const DecisionTree& tree, const FeatureVector& vector);

[[nodiscard]] nlohmann::json tree_to_json(const DecisionTree& tree);
/// Throws LearningError(malformed_model).
[[nodiscard]] DecisionTree tree_from_json(const nlohmann::json& doc);

}  // namespace unani::learning
