#include "unani/learning/text_match.hpp"

#include <map>

#include "unani/common/identifier.hpp"

namespace unani::learning {

namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words{
      "a",   "also", "an",  "and", "are",     "as",   "at",  "but",  "feel", "feels", "for", "from",
      "has", "have", "he",  "her", "his",     "i",    "in",  "is",   "it",   "me",    "my",  "of",
      "on",  "or",   "she", "so",  "some",    "the",  "their", "they", "to", "very",  "was", "with",
  };
  return words;
}

using PhraseTable = std::map<std::vector<std::string>, std::set<std::string>>;

PhraseTable build_table(const kb::KnowledgeBase& kb) {
  PhraseTable table;
  for (const auto& [id, f] : kb.findings()) {
    auto add = [&](std::string_view phrase) {
      auto toks = tokenize_words(phrase);
      if (!toks.empty()) table[std::move(toks)].insert(id);
    };
    add(f.label);
    for (const auto& s : f.synonyms) add(s);
  }
  return table;
}

}  // namespace

FindingMatch match_findings(const kb::KnowledgeBase& kb, std::string_view text) {
  const PhraseTable table = build_table(kb);
  std::size_t longest = 0;
  for (const auto& [phrase, ids] : table) longest = std::max(longest, phrase.size());

  const auto tokens = tokenize_words(text);
  FindingMatch out;
  std::string fragment;
  auto flush = [&] {
    if (!fragment.empty()) out.unresolved.push_back(std::move(fragment));
    fragment.clear();
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(longest, tokens.size() - i); len > 0; --len) {
      std::vector<std::string> probe(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                     tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
      auto it = table.find(probe);
      if (it != table.end()) {
        out.finding_ids.insert(it->second.begin(), it->second.end());
        matched = len;
        break;
      }
    }
    if (matched > 0) {
      flush();
      i += matched;
      continue;
    }
    if (stopwords().contains(tokens[i])) {
      flush();
    } else {
      if (!fragment.empty()) fragment += ' ';
      fragment += tokens[i];
    }
    ++i;
  }
  flush();
  return out;
}

std::set<std::string> text_to_findings(const kb::KnowledgeBase& kb, std::string_view text) {
  return match_findings(kb, text).finding_ids;
}

}  // namespace unani::learning
