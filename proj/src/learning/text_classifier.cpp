#include "unani/learning/text_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "unani/common/identifier.hpp"
#include "unani/learning/dataset.hpp"

namespace unani::learning {

namespace {

using json = nlohmann::json;

constexpr int kTextFormat = 1;

}  // namespace

TextModel train_text_classifier(const PromptCorpus& corpus) {
  if (corpus.sentences.empty()) throw LearningError("empty_corpus", "cannot train on an empty corpus");
  TextModel m;
  for (const auto& s : corpus.sentences) {
    auto& lc = m.labels[s.label];
    ++lc.documents;
    ++m.documents;
    for (auto& tok : tokenize_words(s.text)) {
      ++lc.tokens;
      ++lc.counts[tok];
      m.vocabulary.insert(std::move(tok));
    }
  }
  return m;
}

inference::Differential classify_text(const TextModel& model, std::string_view text) {
  if (model.labels.empty() || model.documents == 0) throw LearningError("empty_corpus", "model is untrained");
  const auto tokens = tokenize_words(text);
  if (tokens.empty()) throw LearningError("empty_text", "text has no words");

  const double v = static_cast<double>(model.vocabulary.size());
  std::map<std::string, double> log_post;
  for (const auto& [label, lc] : model.labels) {
    double lp = std::log(static_cast<double>(lc.documents) / static_cast<double>(model.documents));
    const double denom = static_cast<double>(lc.tokens) + v;
    for (const auto& t : tokens) {
      if (!model.vocabulary.contains(t)) continue;
      auto it = lc.counts.find(t);
      const double n = it == lc.counts.end() ? 0.0 : static_cast<double>(it->second);
      lp += std::log((n + 1.0) / denom);
    }
    log_post[label] = lp;
  }
  double top = -INFINITY;
  for (const auto& [label, lp] : log_post) top = std::max(top, lp);
  double z = 0.0;
  for (const auto& [label, lp] : log_post) z += std::exp(lp - top);
  std::map<std::string, double> dist;
  for (const auto& [label, lp] : log_post) dist[label] = std::exp(lp - top) / z;
  return distribution_to_differential(dist);
}

json text_model_to_json(const TextModel& model) {
  json labels = json::object();
  for (const auto& [label, lc] : model.labels) {
    labels[label] = {{"documents", lc.documents}, {"tokens", lc.tokens}, {"counts", lc.counts}};
  }
  return {{"version", kTextFormat},
          {"documents", model.documents},
          {"vocabulary", model.vocabulary},
          {"labels", std::move(labels)}};
}

TextModel text_model_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != kTextFormat) {
      throw LearningError("malformed_model", "unsupported text model version");
    }
    TextModel m;
    m.documents = doc.at("documents").get<std::size_t>();
    m.vocabulary = doc.at("vocabulary").get<std::set<std::string>>();
    for (const auto& [label, j] : doc.at("labels").items()) {
      LabelCounts lc;
      lc.documents = j.at("documents").get<std::size_t>();
      lc.tokens = j.at("tokens").get<std::size_t>();
      lc.counts = j.at("counts").get<std::map<std::string, std::size_t>>();
      m.labels[label] = std::move(lc);
    }
    return m;
  } catch (const json::exception& ex) {
    throw LearningError("malformed_model", ex.what());
  }
}

}  // namespace unani::learning
