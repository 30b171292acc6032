#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "unani/cli/loaders.hpp"
#include "unani/knowledge/knowledge_base.hpp"
#include "unani/rules/ast.hpp"

namespace unani::testing {

inline std::filesystem::path data_dir() { return UNANI_TEST_DATA_DIR; }
inline std::filesystem::path seed_path(const std::string& name) { return data_dir() / "seed" / name; }

inline const kb::KnowledgeBase& seed_kb() {
  static const kb::KnowledgeBase kb = cli::load_kb(seed_path("kb.json"));
  return kb;
}

/// The ten clinical rules for Migraine and Insomnia.
inline const std::vector<rules::RuleAst>& clinical_rules() {
  static const auto rs = cli::load_rules({seed_path("clinical_rules.umr")});
  return rs;
}

/// Everything shipped: the ten rules plus the Zukam rules.
inline const std::vector<rules::RuleAst>& shipped_rules() {
  static const auto rs = cli::load_rules({seed_path("clinical_rules.umr"), seed_path("zukam.umr")});
  return rs;
}

}  // namespace unani::testing
