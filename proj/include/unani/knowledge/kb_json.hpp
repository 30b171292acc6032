#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "unani/knowledge/knowledge_base.hpp"

namespace unani::kb {

[[nodiscard]] nlohmann::json kb_to_json(const KnowledgeBase& kb);

/// Throws KbError(malformed_document) on schema violations.
[[nodiscard]] KnowledgeBase kb_from_json(const nlohmann::json& doc);

/// Canonical UTF-8 text: sorted keys, two-space indent, trailing newline.
[[nodiscard]] std::string kb_to_document(const KnowledgeBase& kb);

/// Parses a canonical document. Syntax errors carry the byte offset.
[[nodiscard]] KnowledgeBase kb_from_document(std::string_view text);

}  // namespace unani::kb
