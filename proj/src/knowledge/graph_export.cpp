#include "unani/knowledge/graph_export.hpp"

#include <algorithm>

namespace unani::kb {

std::string graph_node_key(std::string_view family, std::string_view id) {
  std::string key(family);
  key.push_back(':');
  key.append(id);
  return key;
}

nlohmann::json GraphDocument::to_json() const {
  auto node_arr = nlohmann::json::array();
  for (const auto& n : nodes) {
    node_arr.push_back({{"id", n.id}, {"node_type", n.node_type}, {"properties", n.properties}});
  }
  auto edge_arr = nlohmann::json::array();
  for (const auto& e : edges) {
    edge_arr.push_back({{"src", e.src}, {"dst", e.dst}, {"edge_type", e.edge_type}});
  }
  return {{"nodes", std::move(node_arr)}, {"edges", std::move(edge_arr)}};
}

GraphDocument kb_export_graph(const KnowledgeBase& kb) {
  const auto report = kb_validate(kb);
  if (!report.empty()) {
    const auto& first = report.violations.front();
    throw KbError("invalid_kb", "cannot export an invalid knowledge base (" + first.code + ": " +
                                    first.subject + ")");
  }

  GraphDocument doc;
  for (const auto& [id, d] : kb.diseases()) {
    nlohmann::json props = {{"name", d.name}, {"description", d.description}};
    props["alt_name"] = d.alt_name ? nlohmann::json(*d.alt_name) : nlohmann::json(nullptr);
    doc.nodes.push_back({graph_node_key("disease", id), "Disease", std::move(props)});
  }
  for (const auto& [id, f] : kb.findings()) {
    doc.nodes.push_back({graph_node_key("finding", id),
                         f.kind == FindingKind::symptom ? "Symptom" : "Cause",
                         {{"label", f.label}, {"synonyms", f.synonyms}}});
  }
  for (const auto& [id, t] : kb.treatments()) {
    doc.nodes.push_back({graph_node_key("treatment", id), "Treatment",
                         {{"label", t.label}, {"category", to_string(t.category)}}});
  }

  for (const auto& e : kb.finding_edges()) {
    const auto* f = kb.find_finding(e.finding_id);
    doc.edges.push_back({graph_node_key("disease", e.disease_id), graph_node_key("finding", e.finding_id),
                         f->kind == FindingKind::symptom ? "HAS_SYMPTOM" : "HAS_CAUSE"});
  }
  for (const auto& e : kb.treatment_edges()) {
    doc.edges.push_back({graph_node_key("disease", e.disease_id),
                         graph_node_key("treatment", e.treatment_id), "HAS_TREATMENT"});
  }

  std::sort(doc.nodes.begin(), doc.nodes.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  std::sort(doc.edges.begin(), doc.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.src, a.dst, a.edge_type) < std::tie(b.src, b.dst, b.edge_type);
  });
  return doc;
}

}  // namespace unani::kb
