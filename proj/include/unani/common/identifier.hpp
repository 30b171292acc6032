#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace unani {

/// True iff `id` matches `[a-z][a-z0-9_]*`.
[[nodiscard]] bool is_valid_identifier(std::string_view id) noexcept;

/// Folds Latin diacritics in UTF-8 text to ASCII ("Taskīn" -> "Taskin").
/// Apostrophe-like marks are dropped; other non-ASCII code points become a
/// space so they act as word separators.
[[nodiscard]] std::string ascii_fold(std::string_view utf8);

/// Maps free text or a mixed-convention constant to an identifier:
/// ASCII-fold, split camelCase humps, lowercase, and collapse every run of
/// non-alphanumerics into one underscore. Idempotent. The result may still be
/// invalid (empty, leading digit); callers check with is_valid_identifier.
[[nodiscard]] std::string normalize_identifier(std::string_view text);

/// Lowercased ASCII-folded alphanumeric tokens of `text`.
[[nodiscard]] std::vector<std::string> tokenize_words(std::string_view text);

/// Trims ASCII whitespace on both ends and collapses inner runs to one space.
[[nodiscard]] std::string collapse_whitespace(std::string_view text);

}  // namespace unani
