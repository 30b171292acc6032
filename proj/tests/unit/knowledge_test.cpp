#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "unani/knowledge/graph_export.hpp"
#include "unani/knowledge/kb_json.hpp"

namespace unani::kb {
namespace {

using testing::seed_kb;

Disease migraine() { return {"migraine", "Migraine", "Shaqīqa", ""}; }

std::vector<Finding> migraine_symptoms() {
  return {{"half_head_episodic_throbbing_pain", FindingKind::symptom, "Half head episodic throbbing pain", {}},
          {"whole_head_sometimes", FindingKind::symptom, "Whole head sometimes", {}}};
}

std::vector<TreatmentItem> migraine_principles() {
  return {{"analgesia", TreatmentCategory::principle, "Analgesia"},
          {"causative_humouur_evacuation", TreatmentCategory::principle, "Causative humouur Evacuation"},
          {"toning_up_of_brain", TreatmentCategory::principle, "ToningUp Of Brain"}};
}

TEST(KnowledgeBase, EmptyIsValid) { EXPECT_TRUE(kb_validate(KnowledgeBase{}).empty()); }

TEST(KnowledgeBase, SeedIsValid) {
  const auto report = kb_validate(seed_kb());
  EXPECT_TRUE(report.empty()) << report.to_json().dump();
}

TEST(KnowledgeBase, DanglingFindingEdge) {
  KnowledgeBase kb({}, {{"zukam", {"zukam", "Zukam", std::nullopt, ""}}}, {}, {{"zukam", "running_nose"}}, {});
  const auto report = kb_validate(kb);
  EXPECT_EQ(report.count("dangling_finding_edge"), 1u);
  EXPECT_EQ(report.count("disease_without_findings"), 1u);
}

TEST(KnowledgeBase, UpsertMigraine) {
  const auto kb = kb_upsert_disease({}, migraine(), migraine_symptoms(), migraine_principles());
  EXPECT_EQ(kb.diseases().size(), 1u);
  EXPECT_EQ(kb.finding_edges().size(), 2u);
  EXPECT_EQ(kb.treatment_edges().size(), 3u);
  EXPECT_TRUE(kb_validate(kb).empty());
}

TEST(KnowledgeBase, UpsertIsIdempotent) {
  const auto once = kb_upsert_disease({}, migraine(), migraine_symptoms(), migraine_principles());
  const auto twice = kb_upsert_disease(once, migraine(), migraine_symptoms(), migraine_principles());
  EXPECT_EQ(once, twice);
  EXPECT_EQ(kb_to_document(once), kb_to_document(twice));
}

TEST(KnowledgeBase, UpsertReplacesEdges) {
  auto kb = kb_upsert_disease({}, migraine(), migraine_symptoms(), migraine_principles());
  kb = kb_upsert_disease(kb, migraine(), {migraine_symptoms()[0]}, {});
  EXPECT_EQ(kb.findings_of("migraine"), std::vector<std::string>{"half_head_episodic_throbbing_pain"});
  EXPECT_TRUE(kb.treatments_of("migraine").empty());
}

TEST(KnowledgeBase, UpsertRejectsMalformedIds) {
  Disease bad = migraine();
  bad.id = "Half Head";
  try {
    (void)kb_upsert_disease({}, bad, migraine_symptoms(), {});
    FAIL() << "expected an error";
  } catch (const KbError& e) {
    EXPECT_EQ(e.code(), "invalid_identifier");
  }
  auto symptoms = migraine_symptoms();
  symptoms[0].id = "Half Head";
  EXPECT_THROW((void)kb_upsert_disease({}, migraine(), symptoms, {}), KbError);
}

TEST(KnowledgeBase, UpsertKindConflict) {
  auto kb = kb_upsert_disease({}, migraine(), migraine_symptoms(), {});
  auto as_cause = migraine_symptoms();
  as_cause[0].kind = FindingKind::cause;
  try {
    (void)kb_upsert_disease(kb, {"other", "Other", std::nullopt, ""}, as_cause, {});
    FAIL() << "expected an error";
  } catch (const KbError& e) {
    EXPECT_EQ(e.code(), "kind_conflict");
  }
}

TEST(KnowledgeBase, FindDiseasesByFinding) {
  EXPECT_EQ(kb_find_diseases_by_finding(seed_kb(), "headache_generic"), std::vector<std::string>{"zukam"});
  EXPECT_EQ(kb_find_diseases_by_finding(seed_kb(), "running_nose"), std::vector<std::string>{"zukam"});
  EXPECT_THROW((void)kb_find_diseases_by_finding(seed_kb(), "nope"), KbError);
}

TEST(KnowledgeBase, SeedHandCount) {
  // Migraine 5 findings + 8 treatments, Insomnia 14 + 11, Zukam 2 + 4.
  // Shared treatments: analgesia, irrigation, grief_avoidance, bloodletting.
  const auto& kb = seed_kb();
  EXPECT_EQ(kb.diseases().size(), 3u);
  EXPECT_EQ(kb.findings().size(), 5u + 14u + 2u);
  EXPECT_EQ(kb.treatments().size(), 8u + 11u + 4u - 4u);
  EXPECT_EQ(kb.finding_edges().size(), 21u);
  EXPECT_EQ(kb.treatment_edges().size(), 8u + 11u + 4u);
  EXPECT_EQ(kb.find_disease("migraine")->alt_name, std::optional<std::string>("Shaqīqa"));
}

TEST(KbJson, SeedRoundTrip) {
  const auto& kb = seed_kb();
  EXPECT_EQ(kb_from_document(kb_to_document(kb)), kb);
  EXPECT_EQ(kb_from_json(kb_to_json(kb)), kb);
}

TEST(KbJson, UnicodePreserved) {
  const auto kb = kb_upsert_disease({}, migraine(), migraine_symptoms(), {});
  const auto doc = kb_to_document(kb);
  EXPECT_NE(doc.find("Shaqīqa"), std::string::npos);
  EXPECT_EQ(kb_from_document(doc).find_disease("migraine")->alt_name.value(), "Shaqīqa");
}

TEST(KbJson, TruncatedDocumentReportsOffset) {
  const auto doc = kb_to_document(seed_kb());
  try {
    (void)kb_from_document(doc.substr(0, doc.size() / 2));
    FAIL() << "expected an error";
  } catch (const KbError& e) {
    EXPECT_EQ(e.code(), "malformed_document");
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(KbJson, SchemaViolation) {
  auto j = kb_to_json(seed_kb());
  j.erase("diseases");
  EXPECT_THROW((void)kb_from_json(j), KbError);
}

TEST(KbJson, RandomRoundTrip) {
  testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto kb = testing::random_kb(rng);
    ASSERT_TRUE(kb_validate(kb).empty());
    EXPECT_EQ(kb_from_document(kb_to_document(kb)), kb);
  }
}

TEST(GraphExport, Counts) {
  const auto& kb = seed_kb();
  const auto g = kb_export_graph(kb);
  EXPECT_EQ(g.nodes.size(), kb.findings().size() + kb.diseases().size() + kb.treatments().size());
  EXPECT_EQ(g.edges.size(), kb.finding_edges().size() + kb.treatment_edges().size());
}

TEST(GraphExport, SingleDiseaseSingleSymptom) {
  const auto kb = kb_upsert_disease({}, {"zukam", "Zukam", std::nullopt, ""},
                                    {{"running_nose", FindingKind::symptom, "Running nose", {}}}, {});
  const auto g = kb_export_graph(kb);
  ASSERT_EQ(g.nodes.size(), 2u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].edge_type, "HAS_SYMPTOM");
  EXPECT_EQ(g.edges[0].src, graph_node_key("disease", "zukam"));
  EXPECT_EQ(g.edges[0].dst, graph_node_key("finding", "running_nose"));
}

TEST(GraphExport, Deterministic) {
  EXPECT_EQ(kb_export_graph(seed_kb()).to_json().dump(), kb_export_graph(seed_kb()).to_json().dump());
}

TEST(GraphExport, RejectsInvalidKb) {
  KnowledgeBase kb({}, {{"zukam", {"zukam", "Zukam", std::nullopt, ""}}}, {}, {{"zukam", "x"}}, {});
  EXPECT_THROW((void)kb_export_graph(kb), KbError);
}

}  // namespace
}  // namespace unani::kb
