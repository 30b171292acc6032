#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support/fixtures.hpp"
#include "unani/cli/commands.hpp"
#include "unani/cli/loaders.hpp"

namespace unani::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "unani");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("unani-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(CliTest, IngestSeed) {
  const auto out = (dir_ / "kb.json").string();
  const auto r = run_cli({"ingest", testing::seed_path("seed.umt").string(), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(out), read_file(testing::seed_path("kb.json")));
  const auto g = run_cli({"--kb", out, "export-graph", "--out", (dir_ / "g.json").string()});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto doc = nlohmann::json::parse(read_file(dir_ / "g.json"));
  EXPECT_EQ(doc["nodes"].size(), 43u);
  EXPECT_EQ(doc["edges"].size(), 44u);
}

TEST_F(CliTest, IngestErrors) {
  write_file(dir_ / "bad.umt", "<DIS>Migraine\n<SYM>pain\n</DIS>\n");
  const auto r = run_cli({"ingest", (dir_ / "bad.umt").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.umt:3:"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"ingest"}).code, 2);
  EXPECT_EQ(run_cli({"ingest", (dir_ / "missing.umt").string()}).code, 2);
}

TEST_F(CliTest, DiagnoseText) {
  const auto r = run_cli({"diagnose", "--text", "running nose and headache", "--engine", "rules"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto first = r.out.find("zukam");
  ASSERT_NE(first, std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("migraine"), std::string::npos);
}

TEST_F(CliTest, DiagnoseFindingsJson) {
  const auto r = run_cli({"--json", "diagnose", "--findings", "half_head_episodic_throbbing_pain,whole_head_sometimes",
                          "--explain"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["differential"][0]["disease_id"], "migraine");
  EXPECT_EQ(doc["differential"][0]["fired_rules"][0], "migraine.symptoms");
}

TEST_F(CliTest, DiagnoseEngines) {
  for (const auto* engine : {"rules", "tree", "text"}) {
    const auto r = run_cli({"--json", "diagnose", "--text", "running nose and headache", "--engine", engine});
    ASSERT_EQ(r.code, 0) << engine << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["differential"][0]["disease_id"], "zukam") << engine;
  }
  EXPECT_EQ(run_cli({"diagnose", "--findings", "running_nose", "--engine", "bogus"}).code, 2);
  EXPECT_EQ(run_cli({"diagnose"}).code, 2);
  EXPECT_EQ(run_cli({"diagnose", "--findings", "nope", "--strict"}).code, 1);
}

TEST_F(CliTest, AugmentToy) {
  const auto r = run_cli({"augment", "--dataset", (testing::data_dir() / "examples" / "toy.csv").string(), "--depth",
                          "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2 augmented rows"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidateShipped) {
  const auto r = run_cli({"validate"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  write_file(dir_ / "extra.umr", "Symptoms(?p, unknown_symptom) -> Disease(?p, Zukam)\n");
  const auto bad = run_cli({"--rules", (dir_ / "extra.umr").string(), "validate"});
  EXPECT_EQ(bad.code, 1);
  const auto warn = run_cli({"--rules", (dir_ / "extra.umr").string(), "validate", "--unknown-constant", "warn"});
  EXPECT_NE(warn.out.find("unknown_constant"), std::string::npos);
}

TEST_F(CliTest, ExportGraphDeterministic) {
  const auto a = (dir_ / "a.json").string();
  const auto b = (dir_ / "b.json").string();
  ASSERT_EQ(run_cli({"export-graph", "--out", a}).code, 0);
  ASSERT_EQ(run_cli({"export-graph", "--out", b}).code, 0);
  EXPECT_EQ(read_file(a), read_file(b));
}

TEST_F(CliTest, RulesCheck) {
  const auto r = run_cli({"rules", "check", testing::seed_path("clinical_rules.umr").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("10 rules: 4 diagnostic, 6 prescriptive"), std::string::npos) << r.out;
  write_file(dir_ / "bad.umr", "Symptoms(?p x)");
  EXPECT_EQ(run_cli({"rules", "check", (dir_ / "bad.umr").string()}).code, 1);
}

TEST_F(CliTest, TrainModels) {
  const auto tree = (dir_ / "tree.json").string();
  ASSERT_EQ(run_cli({"train", "--engine", "tree", "--out", tree}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(read_file(tree))["version"], 1);
  const auto text = (dir_ / "text.json").string();
  ASSERT_EQ(run_cli({"train", "--engine", "text", "--out", text}).code, 0);
  EXPECT_FALSE(nlohmann::json::parse(read_file(text))["vocabulary"].empty());
}

TEST_F(CliTest, HelpAndUnknown) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"serve", "--port", "70000"}).code, 2);
}

TEST(Loaders, DefaultsExist) {
  EXPECT_TRUE(fs::exists(default_kb_path()));
  for (const auto& p : default_rules_paths()) EXPECT_TRUE(fs::exists(p)) << p;
  EXPECT_THROW((void)read_file("/nonexistent/file"), Error);
  EXPECT_EQ(load_rules(default_rules_paths()).size(), 12u);
}

}  // namespace
}  // namespace unani::cli
