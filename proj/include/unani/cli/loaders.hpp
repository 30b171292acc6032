#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "unani/knowledge/knowledge_base.hpp"
#include "unani/rules/ast.hpp"

namespace unani::cli {

/// Throws Error(io_error).
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Directory holding the shipped seed data (kb.json, rule files, templates).
[[nodiscard]] std::filesystem::path seed_dir();
[[nodiscard]] std::filesystem::path default_kb_path();
[[nodiscard]] std::vector<std::filesystem::path> default_rules_paths();

[[nodiscard]] kb::KnowledgeBase load_kb(const std::filesystem::path& path);

/// Concatenation of the rules of each file, in order. Ids default per file.
[[nodiscard]] std::vector<rules::RuleAst> load_rules(const std::vector<std::filesystem::path>& paths);

}  // namespace unani::cli
