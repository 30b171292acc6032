#include "unani/learning/prompts.hpp"

#include <sstream>

#include "unani/common/identifier.hpp"
#include "unani/learning/dataset.hpp"

namespace unani::learning {

namespace {

enum class Slot { text, disease, symptom_list, cause_list, symptom, cause };

struct Piece {
  Slot slot = Slot::text;
  std::string text;
};

std::vector<Piece> compile(const std::string& tmpl) {
  std::vector<Piece> out;
  std::string literal;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      literal += tmpl[i++];
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string::npos) {
      throw LearningError("unknown_placeholder", "unterminated placeholder in template: " + tmpl);
    }
    const std::string name = tmpl.substr(i + 1, close - i - 1);
    Slot slot;
    if (name == "disease") {
      slot = Slot::disease;
    } else if (name == "symptom_list") {
      slot = Slot::symptom_list;
    } else if (name == "cause_list") {
      slot = Slot::cause_list;
    } else if (name == "symptom") {
      slot = Slot::symptom;
    } else if (name == "cause") {
      slot = Slot::cause;
    } else {
      throw LearningError("unknown_placeholder", "unknown placeholder {" + name + "} in template: " + tmpl);
    }
    if (!literal.empty()) out.push_back({Slot::text, std::move(literal)});
    literal.clear();
    out.push_back({slot, {}});
    i = close + 1;
  }
  if (!literal.empty()) out.push_back({Slot::text, std::move(literal)});
  return out;
}

bool uses(const std::vector<Piece>& pieces, Slot s) {
  for (const auto& p : pieces) {
    if (p.slot == s) return true;
  }
  return false;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

PromptCorpus generate_prompts(const kb::KnowledgeBase& kb, const std::vector<std::string>& templates) {
  std::vector<std::vector<Piece>> compiled;
  for (const auto& t : templates) {
    if (collapse_whitespace(t).empty()) throw LearningError("empty_template", "template is blank");
    compiled.push_back(compile(t));
  }

  PromptCorpus corpus;
  for (const auto& [id, disease] : kb.diseases()) {
    std::vector<std::string> symptoms;
    std::vector<std::string> causes;
    for (const auto& fid : kb.findings_of(id)) {
      const kb::Finding* f = kb.find_finding(fid);
      const std::string label = f->label.empty() ? fid : f->label;
      (f->kind == kb::FindingKind::symptom ? symptoms : causes).push_back(label);
    }
    const std::string name = disease.name.empty() ? id : disease.name;

    for (const auto& pieces : compiled) {
      const bool per_symptom = uses(pieces, Slot::symptom);
      const bool per_cause = uses(pieces, Slot::cause);
      if ((per_symptom || uses(pieces, Slot::symptom_list)) && symptoms.empty()) continue;
      if ((per_cause || uses(pieces, Slot::cause_list)) && causes.empty()) continue;
      const std::vector<std::string> one{""};
      for (const auto& s : per_symptom ? symptoms : one) {
        for (const auto& c : per_cause ? causes : one) {
          std::string text;
          for (const auto& p : pieces) {
            switch (p.slot) {
              case Slot::text: text += p.text; break;
              case Slot::disease: text += name; break;
              case Slot::symptom_list: text += join(symptoms); break;
              case Slot::cause_list: text += join(causes); break;
              case Slot::symptom: text += s; break;
              case Slot::cause: text += c; break;
            }
          }
          corpus.sentences.push_back({collapse_whitespace(text), id});
        }
      }
    }
  }
  return corpus;
}

std::vector<std::string> parse_templates(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = collapse_whitespace(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

const std::vector<std::string>& default_templates() {
  static const std::vector<std::string> templates{
      "The patient reports {symptom}.",
      "The patient complains of {symptom_list}.",
      "Symptoms include {symptom_list}.",
      "Presenting with {symptom}, possibly due to {cause}.",
      "The condition may be caused by {cause_list}.",
      "A case of {disease} with {symptom_list}.",
  };
  return templates;
}

}  // namespace unani::learning
