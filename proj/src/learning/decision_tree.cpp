#include "unani/learning/decision_tree.hpp"

#include <algorithm>
#include <functional>

namespace unani::learning {

namespace {

__extension__ typedef __int128 wide;

using json = nlohmann::json;

constexpr int kTreeFormat = 1;

struct Builder {
  const LabeledDataset& ds;
  const TreeParams& params;
  std::vector<TreeNode> nodes;

  std::map<std::string, int> count_labels(const std::vector<std::size_t>& rows) const {
    std::map<std::string, int> counts;
    for (std::size_t r : rows) ++counts[ds.rows[r].label];
    return counts;
  }

  static std::string majority(const std::map<std::string, int>& counts) {
    std::string best;
    int best_n = -1;
    for (const auto& [label, n] : counts) {
      if (n > best_n) {
        best = label;
        best_n = n;
      }
    }
    return best;
  }

  static long long sum_squares(const std::map<std::string, long long>& counts) {
    long long s = 0;
    for (const auto& [label, n] : counts) s += n * n;
    return s;
  }

  // Index of the best split feature, or -1. Maximizing sum_c (sum_k n_ck^2) / n_c
  // over the two children is the same as minimizing weighted child Gini.
  int best_feature(const std::vector<std::size_t>& rows) const {
    int best = -1;
    wide best_num = 0;
    wide best_den = 1;
    const auto min_leaf = static_cast<std::size_t>(params.min_samples_leaf);
    for (std::size_t f = 0; f < ds.space.size(); ++f) {
      std::map<std::string, long long> present;
      std::map<std::string, long long> absent;
      long long n_p = 0;
      long long n_a = 0;
      for (std::size_t r : rows) {
        if (ds.rows[r].vector[f]) {
          ++present[ds.rows[r].label];
          ++n_p;
        } else {
          ++absent[ds.rows[r].label];
          ++n_a;
        }
      }
      if (static_cast<std::size_t>(n_p) < min_leaf || static_cast<std::size_t>(n_a) < min_leaf) continue;
      const wide num = static_cast<wide>(sum_squares(present)) * n_a + static_cast<wide>(sum_squares(absent)) * n_p;
      const wide den = static_cast<wide>(n_p) * n_a;
      if (best < 0 || num * best_den > best_num * den) {
        best = static_cast<int>(f);
        best_num = num;
        best_den = den;
      }
    }
    return best;
  }

  int build(const std::vector<std::size_t>& rows, int depth) {
    const int index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    auto counts = count_labels(rows);
    nodes[index].label = majority(counts);
    nodes[index].counts = counts;
    if (counts.size() <= 1 || depth >= params.max_depth ||
        rows.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf)) {
      return index;
    }
    const int f = best_feature(rows);
    if (f < 0) return index;
    std::vector<std::size_t> absent;
    std::vector<std::size_t> present;
    for (std::size_t r : rows) (ds.rows[r].vector[f] ? present : absent).push_back(r);
    nodes[index].feature = f;
    const int a = build(absent, depth + 1);
    const int p = build(present, depth + 1);
    nodes[index].absent = a;
    nodes[index].present = p;
    return index;
  }
};

json node_to_json(const DecisionTree& tree, int i) {
  const TreeNode& n = tree.nodes[static_cast<std::size_t>(i)];
  json j = {{"label", n.label}, {"counts", n.counts}};
  if (n.is_leaf()) return j;
  j["feature"] = tree.space.features[static_cast<std::size_t>(n.feature)];
  j["index"] = n.feature;
  j["absent"] = node_to_json(tree, n.absent);
  j["present"] = node_to_json(tree, n.present);
  return j;
}

int node_from_json(DecisionTree& tree, const json& j) {
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  tree.nodes.back().label = j.at("label").get<std::string>();
  tree.nodes.back().counts = j.at("counts").get<std::map<std::string, int>>();
  if (!j.contains("index")) return index;
  const int f = j.at("index").get<int>();
  if (f < 0 || static_cast<std::size_t>(f) >= tree.space.size() ||
      tree.space.features[static_cast<std::size_t>(f)] != j.at("feature").get<std::string>()) {
    throw LearningError("malformed_model", "split feature does not match the feature space");
  }
  tree.nodes[static_cast<std::size_t>(index)].feature = f;
  const int a = node_from_json(tree, j.at("absent"));
  const int p = node_from_json(tree, j.at("present"));
  tree.nodes[static_cast<std::size_t>(index)].absent = a;
  tree.nodes[static_cast<std::size_t>(index)].present = p;
  return index;
}

}  // namespace

int DecisionTree::depth() const {
  std::function<int(int)> walk = [&](int i) -> int {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.is_leaf()) return 0;
    return 1 + std::max(walk(n.absent), walk(n.present));
  };
  return nodes.empty() ? 0 : walk(0);
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

DecisionTree train_decision_tree(const LabeledDataset& ds, const TreeParams& params) {
  if (ds.rows.empty()) throw LearningError("empty_dataset", "cannot train on an empty dataset");
  if (params.max_depth < 0 || params.min_samples_leaf < 1) {
    throw LearningError("invalid_params", "max_depth must be >= 0 and min_samples_leaf >= 1");
  }
  for (const auto& r : ds.rows) {
    if (r.vector.size() != ds.space.size()) throw LearningError("length_mismatch", "row length differs from space");
  }
  Builder b{ds, params, {}};
  std::vector<std::size_t> all(ds.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  b.build(all, 0);
  return {ds.space, std::move(b.nodes)};
}

Prediction tree_predict(const DecisionTree& tree, const FeatureVector& vector) {
  if (vector.size() != tree.space.size()) {
    throw LearningError("length_mismatch", "vector has " + std::to_string(vector.size()) + " features, tree expects " +
                                               std::to_string(tree.space.size()));
  }
  if (tree.nodes.empty()) throw LearningError("malformed_model", "tree has no nodes");
  const TreeNode* n = &tree.nodes[0];
  while (!n->is_leaf()) {
    n = &tree.nodes[static_cast<std::size_t>(vector[static_cast<std::size_t>(n->feature)] ? n->present : n->absent)];
  }
  Prediction p;
  p.label = n->label;
  int total = 0;
  for (const auto& [label, c] : n->counts) total += c;
  for (const auto& [label, c] : n->counts) p.distribution[label] = static_cast<double>(c) / total;
  return p;
}

json tree_to_json(const DecisionTree& tree) {
  json j = {{"version", kTreeFormat}, {"features", tree.space.features}};
  j["root"] = tree.nodes.empty() ? json(nullptr) : node_to_json(tree, 0);
  return j;
}

DecisionTree tree_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != kTreeFormat) {
      throw LearningError("malformed_model", "unsupported tree format version");
    }
    DecisionTree tree;
    tree.space.features = doc.at("features").get<std::vector<std::string>>();
    node_from_json(tree, doc.at("root"));
    return tree;
  } catch (const json::exception& ex) {
    throw LearningError("malformed_model", ex.what());
  }
}

}  // namespace unani::learning
