#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unani/knowledge/knowledge_base.hpp"

namespace unani::kb {

struct GraphNode {
  std::string id;         // "<family>:<id>", family in {disease, finding, treatment}
  std::string node_type;  // Disease | Symptom | Cause | Treatment
  nlohmann::json properties;
};

struct GraphEdge {
  std::string src;
  std::string dst;
  std::string edge_type;  // HAS_SYMPTOM | HAS_CAUSE | HAS_TREATMENT
};

struct GraphDocument {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] std::string graph_node_key(std::string_view family, std::string_view id);

/// Node/edge projection of a valid KB, sorted by id. Throws KbError(invalid_kb)
/// when kb_validate reports a violation.
[[nodiscard]] GraphDocument kb_export_graph(const KnowledgeBase& kb);

}  // namespace unani::kb
