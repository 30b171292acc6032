#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "unani/inference/engine.hpp"
#include "unani/learning/prompts.hpp"

namespace unani::learning {

struct LabelCounts {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::map<std::string, std::size_t> counts;

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

/// Multinomial naive Bayes over lowercase alphanumeric tokens.
struct TextModel {
  std::size_t documents = 0;
  std::set<std::string> vocabulary;
  std::map<std::string, LabelCounts> labels;

  friend bool operator==(const TextModel&, const TextModel&) = default;
};

/// Throws LearningError(empty_corpus).
[[nodiscard]] TextModel train_text_classifier(const PromptCorpus& corpus);

/// Posterior per label with add-one smoothing; tokens outside the vocabulary
/// are ignored. Throws LearningError(empty_text) when `text` has no tokens.
[[nodiscard]] inference::Differential classify_text(const TextModel& model, std::string_view text);

[[nodiscard]] nlohmann::json text_model_to_json(const TextModel& model);
/// Throws LearningError(malformed_model).
[[nodiscard]] TextModel text_model_from_json(const nlohmann::json& doc);

}  // namespace unani::learning
