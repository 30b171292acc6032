#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unani/knowledge/knowledge_base.hpp"

namespace unani::learning {

struct FindingMatch {
  std::set<std::string> finding_ids;
  /// Runs of consecutive unmatched tokens, stopwords excluded, in text order.
  std::vector<std::string> unresolved;
};

/// Scans the tokenized text left to right, at each position taking the
/// longest finding label or synonym that starts there. A phrase shared by
/// several findings yields all of them.
[[nodiscard]] FindingMatch match_findings(const kb::KnowledgeBase& kb, std::string_view text);

[[nodiscard]] std::set<std::string> text_to_findings(const kb::KnowledgeBase& kb, std::string_view text);

}  // namespace unani::learning
