#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unani/knowledge/knowledge_base.hpp"

namespace unani::learning {

struct PromptSentence {
  std::string text;
  std::string label;

  friend bool operator==(const PromptSentence&, const PromptSentence&) = default;
};

struct PromptCorpus {
  std::vector<PromptSentence> sentences;

  friend bool operator==(const PromptCorpus&, const PromptCorpus&) = default;
};

/// Expands each template for every disease (ascending id). Placeholders:
///   {disease}       disease name
///   {symptom_list}  symptom labels joined with ", "
///   {cause_list}    cause labels joined with ", "
///   {symptom}       one sentence per symptom
///   {cause}         one sentence per cause
/// A template using both item placeholders yields their cross product. A
/// template is skipped for a disease that has nothing to fill a placeholder
/// with. Throws LearningError(unknown_placeholder) or
/// LearningError(empty_template).
[[nodiscard]] PromptCorpus generate_prompts(const kb::KnowledgeBase& kb, const std::vector<std::string>& templates);

/// One template per line; blank lines are skipped.
[[nodiscard]] std::vector<std::string> parse_templates(std::string_view text);

[[nodiscard]] const std::vector<std::string>& default_templates();

}  // namespace unani::learning
