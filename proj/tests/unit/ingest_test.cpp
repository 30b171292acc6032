#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "unani/cli/loaders.hpp"
#include "unani/ingest/records.hpp"
#include "unani/ingest/tagged_text.hpp"
#include "unani/knowledge/kb_json.hpp"

namespace unani::ingest {
namespace {

std::vector<std::string> ids(const std::vector<RecordItem>& items) {
  std::vector<std::string> out;
  for (const auto& i : items) out.push_back(i.id);
  return out;
}

TagError first_error(const std::string& text) {
  const auto r = scan_tagged_text({"doc.umt", text});
  if (r.errors.empty()) throw std::logic_error("expected a tag error");
  return r.errors.front();
}

TEST(TaggedText, MigraineBlock) {
  const auto records = parse_tagged_text(
      {"", "<DIS>Migraine<SYM>half head episodic throbbing pain</SYM><SYM>whole head sometimes</SYM></DIS>"});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].disease_id, "migraine");
  EXPECT_EQ(ids(records[0].symptoms),
            (std::vector<std::string>{"half_head_episodic_throbbing_pain", "whole_head_sometimes"}));
}

TEST(TaggedText, EmptyDocument) {
  EXPECT_TRUE(parse_tagged_text({"", ""}).empty());
  EXPECT_TRUE(parse_tagged_text({"", "free text outside any block"}).empty());
}

TEST(TaggedText, TagOutsideDiseaseBlock) {
  const auto e = first_error("<SYM>x</SYM>");
  EXPECT_EQ(e.code(), "tag_outside_disease_block");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 1);
}

TEST(TaggedText, ErrorCodes) {
  EXPECT_EQ(first_error("<DIS>a<FOO>x</FOO></DIS>").code(), "unknown_tag");
  EXPECT_EQ(first_error("<DIS>a<SYM>x</DIS>").code(), "unbalanced_tag");
  EXPECT_EQ(first_error("<DIS>a\n<SYM>x</SYM>").code(), "unbalanced_tag");
  EXPECT_EQ(first_error("<DIS>a<DIS>b</DIS></DIS>").code(), "misplaced_tag");
  EXPECT_EQ(first_error("<DIS>a<SYM><CAU>x</CAU></SYM></DIS>").code(), "misplaced_tag");
  EXPECT_EQ(first_error("<DIS>a<SYM> </SYM></DIS>").code(), "empty_value");
  EXPECT_EQ(first_error("<DIS>a<SYM>2x</SYM></DIS>").code(), "invalid_value");
  EXPECT_EQ(first_error("<DIS>a<TRP syn=\"b\">x</TRP></DIS>").code(), "malformed_markup");
  EXPECT_EQ(first_error("<DIS>a<SYM foo>x</SYM></DIS>").code(), "malformed_markup");
}

TEST(TaggedText, UnbalancedReportsLine) {
  const auto e = first_error("<DIS>Migraine\n  <SYM>pain\n</DIS>");
  EXPECT_EQ(e.code(), "unbalanced_tag");
  EXPECT_EQ(e.line(), 3);
  EXPECT_NE(std::string(e.what()).find("doc.umt:3:"), std::string::npos);
}

TEST(TaggedText, RecoversAtNextBlock) {
  const auto r = scan_tagged_text({"", "<DIS>a<FOO></DIS>\n<DIS>b<SYM>x</SYM></DIS>\n<DIS>c<SYM></SYM></DIS>"});
  EXPECT_EQ(r.errors.size(), 2u);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].disease_id, "b");
}

TEST(TaggedText, SynonymsAndEntities) {
  const auto records = parse_tagged_text(
      {"", "<DIS>Zukam<SYM syn=\"Runny  Nose|runny nose|snuffles\">Running nose</SYM>"
           "<TRP>Physical &amp; mental rest</TRP></DIS>"});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].symptoms[0].synonyms, (std::vector<std::string>{"runny nose", "snuffles"}));
  EXPECT_EQ(records[0].principles[0].label, "Physical & mental rest");
  EXPECT_EQ(records[0].principles[0].id, "physical_mental_rest");
}

TEST(TaggedText, DuplicateItemsWarn) {
  const auto r = scan_tagged_text({"", "<DIS>a<SYM>Pain</SYM><SYM>pain</SYM></DIS>"});
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.records.at(0).symptoms.size(), 1u);
}

TEST(TaggedText, FormatParseRoundTrip) {
  testing::Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const auto records = testing::random_records(rng);
    const auto text = format_tagged_text(records);
    const auto back = parse_tagged_text({"gen", text});
    ASSERT_EQ(back, records) << text;
  }
}

TEST(Records, SharedIrrigationMerges) {
  const auto records = parse_tagged_text(
      {"", "<DIS>Migraine<SYM>pain</SYM><REG>Irrigation</REG></DIS>"
           "<DIS>Insomnia<SYM>stress</SYM><REG>Irrigation</REG></DIS>"});
  const auto kb = records_to_kb(records);
  EXPECT_EQ(kb.treatments().size(), 1u);
  EXPECT_EQ(kb.treatment_edges().size(), 2u);
}

TEST(Records, EmptyList) { EXPECT_TRUE(records_to_kb({}).empty()); }

TEST(Records, Collisions) {
  auto code_of = [](const std::string& text) {
    try {
      (void)records_to_kb(parse_tagged_text({"", text}));
    } catch (const IngestError& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of("<DIS>a<SYM>x</SYM></DIS><DIS>b<CAU>x</CAU></DIS>"), "finding_kind_collision");
  EXPECT_EQ(code_of("<DIS>a<SYM>x</SYM><TRP>t</TRP></DIS><DIS>b<SYM>y</SYM><REG>t</REG></DIS>"),
            "treatment_category_collision");
  EXPECT_EQ(code_of("<DIS>a<SYM>x</SYM></DIS><DIS>A<SYM>y</SYM></DIS>"), "duplicate_disease");
  EXPECT_EQ(code_of("<DIS>a<TRP>t</TRP></DIS>"), "invalid_kb");
}

TEST(Records, SeedCorpusMatchesCommittedKb) {
  const auto text = cli::read_file(testing::seed_path("seed.umt"));
  const auto kb = records_to_kb(parse_tagged_text({"seed.umt", text}));
  EXPECT_EQ(kb.node_count(), 43u);
  EXPECT_EQ(kb.edge_count(), 44u);
  EXPECT_EQ(kb, testing::seed_kb());
  EXPECT_EQ(kb::kb_to_document(kb), cli::read_file(testing::seed_path("kb.json")));
}

TEST(Records, OrderIndependent) {
  testing::Rng rng(99);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto records = testing::random_records(rng);
    kb::KnowledgeBase expected;
    try {
      expected = records_to_kb(records);
    } catch (const IngestError&) {
      continue;  // random vocabularies sometimes collide across kinds
    }
    rng.shuffle(records);
    EXPECT_EQ(records_to_kb(records), expected);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace unani::ingest
