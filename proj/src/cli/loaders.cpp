#include "unani/cli/loaders.hpp"

#include <fstream>
#include <sstream>

#include "unani/common/error.hpp"
#include "unani/knowledge/kb_json.hpp"
#include "unani/rules/parser.hpp"

#ifndef UNANI_DEFAULT_DATA_DIR
#define UNANI_DEFAULT_DATA_DIR "data"
#endif

namespace unani::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io_error", "cannot write " + path.string());
  out << content;
  if (!out.flush()) throw Error("io_error", "cannot write " + path.string());
}

fs::path seed_dir() { return fs::path(UNANI_DEFAULT_DATA_DIR) / "seed"; }

fs::path default_kb_path() { return seed_dir() / "kb.json"; }

std::vector<fs::path> default_rules_paths() { return {seed_dir() / "clinical_rules.umr", seed_dir() / "zukam.umr"}; }

kb::KnowledgeBase load_kb(const fs::path& path) {
  try {
    return kb::kb_from_document(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<rules::RuleAst> load_rules(const std::vector<fs::path>& paths) {
  std::vector<rules::RuleAst> out;
  for (const auto& p : paths) {
    auto rs = rules::parse_ruleset(read_file(p), p.filename().string());
    for (auto& r : rs) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace unani::cli
