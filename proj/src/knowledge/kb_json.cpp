#include "unani/knowledge/kb_json.hpp"

namespace unani::kb {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw KbError("malformed_document", "malformed knowledge base document: " + what);
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::string string_member(const json& obj, const char* key) {
  const auto& v = member(obj, key);
  if (!v.is_string()) malformed(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_member(const json& obj, const char* key) {
  const auto& v = member(obj, key);
  if (!v.is_array()) malformed(std::string("key '") + key + "' must be an array");
  return v;
}

}  // namespace

json kb_to_json(const KnowledgeBase& kb) {
  json findings = json::array();
  for (const auto& [id, f] : kb.findings()) {
    findings.push_back({{"id", f.id}, {"kind", to_string(f.kind)}, {"label", f.label}, {"synonyms", f.synonyms}});
  }
  json diseases = json::array();
  for (const auto& [id, d] : kb.diseases()) {
    json entry = {{"id", d.id}, {"name", d.name}, {"description", d.description}};
    entry["alt_name"] = d.alt_name ? json(*d.alt_name) : json(nullptr);
    diseases.push_back(std::move(entry));
  }
  json treatments = json::array();
  for (const auto& [id, t] : kb.treatments()) {
    treatments.push_back({{"id", t.id}, {"category", to_string(t.category)}, {"label", t.label}});
  }
  json finding_edges = json::array();
  for (const auto& e : kb.finding_edges()) {
    finding_edges.push_back({{"disease", e.disease_id}, {"finding", e.finding_id}});
  }
  json treatment_edges = json::array();
  for (const auto& e : kb.treatment_edges()) {
    treatment_edges.push_back({{"disease", e.disease_id}, {"treatment", e.treatment_id}});
  }
  return {{"findings", std::move(findings)},
          {"diseases", std::move(diseases)},
          {"treatments", std::move(treatments)},
          {"finding_edges", std::move(finding_edges)},
          {"treatment_edges", std::move(treatment_edges)}};
}

KnowledgeBase kb_from_json(const json& doc) {
  if (!doc.is_object()) malformed("top level must be an object");

  KnowledgeBase::FindingMap findings;
  for (const auto& f : array_member(doc, "findings")) {
    Finding finding;
    finding.id = string_member(f, "id");
    const auto kind = parse_finding_kind(string_member(f, "kind"));
    if (!kind) malformed("finding '" + finding.id + "' has an unknown kind");
    finding.kind = *kind;
    finding.label = string_member(f, "label");
    if (f.contains("synonyms")) {
      for (const auto& s : array_member(f, "synonyms")) {
        if (!s.is_string()) malformed("synonyms must be strings");
        finding.synonyms.insert(s.get<std::string>());
      }
    }
    if (!findings.emplace(finding.id, finding).second) malformed("duplicate finding '" + finding.id + "'");
  }

  KnowledgeBase::DiseaseMap diseases;
  for (const auto& d : array_member(doc, "diseases")) {
    Disease disease;
    disease.id = string_member(d, "id");
    disease.name = string_member(d, "name");
    if (d.contains("description")) disease.description = string_member(d, "description");
    if (d.contains("alt_name") && !d.at("alt_name").is_null()) disease.alt_name = string_member(d, "alt_name");
    if (!diseases.emplace(disease.id, disease).second) malformed("duplicate disease '" + disease.id + "'");
  }

  KnowledgeBase::TreatmentMap treatments;
  for (const auto& t : array_member(doc, "treatments")) {
    TreatmentItem item;
    item.id = string_member(t, "id");
    const auto category = parse_treatment_category(string_member(t, "category"));
    if (!category) malformed("treatment '" + item.id + "' has an unknown category");
    item.category = *category;
    item.label = string_member(t, "label");
    if (!treatments.emplace(item.id, item).second) malformed("duplicate treatment '" + item.id + "'");
  }

  std::set<FindingEdge> finding_edges;
  for (const auto& e : array_member(doc, "finding_edges")) {
    finding_edges.insert({string_member(e, "disease"), string_member(e, "finding")});
  }
  std::set<TreatmentEdge> treatment_edges;
  for (const auto& e : array_member(doc, "treatment_edges")) {
    treatment_edges.insert({string_member(e, "disease"), string_member(e, "treatment")});
  }

  return KnowledgeBase(std::move(findings), std::move(diseases), std::move(treatments),
                       std::move(finding_edges), std::move(treatment_edges));
}

std::string kb_to_document(const KnowledgeBase& kb) { return kb_to_json(kb).dump(2) + "\n"; }

KnowledgeBase kb_from_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw KbError("malformed_document",
                  "knowledge base document is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return kb_from_json(doc);
}

}  // namespace unani::kb
