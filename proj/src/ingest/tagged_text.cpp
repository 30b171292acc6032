#include "unani/ingest/tagged_text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "unani/common/identifier.hpp"

namespace unani::ingest {

TagError::TagError(std::string code, std::string tag, std::string source, int line, int column,
                   const std::string& message)
    : IngestError(std::move(code), (source.empty() ? std::string("<input>") : source) + ":" +
                                       std::to_string(line) + ":" + std::to_string(column) + ": " +
                                       message),
      tag_(std::move(tag)),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array<std::string_view, 7> kTags = {"DIS", "ALT", "SYM", "CAU", "TRP", "REG", "PRE"};

bool is_known_tag(std::string_view name) {
  return std::find(kTags.begin(), kTags.end(), name) != kTags.end();
}

struct OpenTag {
  std::string name;
  int line = 0;
  int column = 0;
  std::string text;
  std::vector<std::string> synonyms;
};

class Scanner {
 public:
  explicit Scanner(const TaggedDocument& doc) : doc_(doc), text_(doc.text) {}

  ScanResult run() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '<' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == '/' || std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
        read_tag();
      } else if (c == '&') {
        append_text(read_entity());
      } else {
        append_text(std::string(1, c));
        advance(1);
      }
    }
    if (!skipping_ && !stack_.empty()) {
      const auto& open = stack_.back();
      fail("unbalanced_tag", open.name, open.line, open.column,
           "tag <" + open.name + "> opened here is never closed");
    }
    return std::move(result_);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      const auto b = static_cast<unsigned char>(text_[pos_]);
      if (b == '\n') {
        ++line_;
        column_ = 1;
      } else if ((b & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void append_text(const std::string& s) {
    if (!skipping_ && !stack_.empty()) stack_.back().text += s;
  }

  std::string read_entity() {
    static const std::array<std::pair<std::string_view, std::string_view>, 5> kEntities = {{
        {"&lt;", "<"}, {"&gt;", ">"}, {"&amp;", "&"}, {"&quot;", "\""}, {"&apos;", "'"},
    }};
    const std::string_view rest = std::string_view(text_).substr(pos_);
    for (const auto& [entity, value] : kEntities) {
      if (rest.substr(0, entity.size()) == entity) {
        advance(entity.size());
        return std::string(value);
      }
    }
    advance(1);
    return "&";
  }

  void fail(const std::string& code, const std::string& tag, int line, int column,
            const std::string& message) {
    result_.errors.emplace_back(code, tag, doc_.source_name, line, column, message);
    skipping_ = true;
    stack_.clear();
    current_.reset();
  }

  void read_tag() {
    const int line = line_;
    const int column = column_;
    advance(1);  // '<'
    const bool closing = text_[pos_] == '/';
    if (closing) advance(1);
    std::string name;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      name.push_back(text_[pos_]);
      advance(1);
    }

    std::vector<std::string> synonyms;
    bool has_synonyms = false;
    std::string markup_problem;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance(1);
        continue;
      }
      std::string attr;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        attr.push_back(text_[pos_]);
        advance(1);
      }
      if (attr.empty() || pos_ + 1 >= text_.size() || text_[pos_] != '=' || text_[pos_ + 1] != '"') {
        markup_problem = "malformed attribute in tag <" + name + ">";
        while (pos_ < text_.size() && text_[pos_] != '>') advance(1);
        break;
      }
      advance(2);
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '&') {
          value += read_entity();
        } else {
          value.push_back(text_[pos_]);
          advance(1);
        }
      }
      if (pos_ >= text_.size()) break;
      advance(1);  // closing quote
      if (attr != "syn" || closing || has_synonyms) {
        markup_problem = "unsupported attribute '" + attr + "' on <" + name + ">";
        continue;
      }
      has_synonyms = true;
      std::string_view rest = value;
      while (true) {
        const auto bar = rest.find('|');
        std::string phrase = collapse_whitespace(rest.substr(0, bar));
        std::transform(phrase.begin(), phrase.end(), phrase.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (!phrase.empty() && std::find(synonyms.begin(), synonyms.end(), phrase) == synonyms.end()) {
          synonyms.push_back(std::move(phrase));
        }
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
      }
    }
    if (pos_ >= text_.size()) {
      if (!skipping_) fail("malformed_markup", name, line, column, "tag is not terminated by '>'");
      return;
    }
    advance(1);  // '>'

    if (!is_known_tag(name)) {
      // Unknown tags are reported even while recovering: they are never valid.
      result_.errors.emplace_back("unknown_tag", name, doc_.source_name, line, column,
                                  "unknown tag <" + std::string(closing ? "/" : "") + name + ">");
      skipping_ = true;
      stack_.clear();
      current_.reset();
      return;
    }

    if (skipping_) {
      if (closing || name != "DIS") return;
      skipping_ = false;
    }

    if (!markup_problem.empty()) {
      fail("malformed_markup", name, line, column, markup_problem);
      return;
    }
    if (has_synonyms && name != "SYM" && name != "CAU") {
      fail("malformed_markup", name, line, column, "synonyms are only allowed on <SYM> and <CAU>");
      return;
    }

    if (closing) {
      close_tag(name, line, column);
    } else {
      open_tag(name, line, column, std::move(synonyms));
    }
  }

  void open_tag(const std::string& name, int line, int column, std::vector<std::string> synonyms) {
    if (name == "DIS") {
      if (!stack_.empty()) {
        fail("misplaced_tag", name, line, column, "<DIS> blocks cannot be nested");
        return;
      }
      current_.emplace();
    } else if (stack_.empty()) {
      fail("tag_outside_disease_block", name, line, column, "<" + name + "> must appear inside a <DIS> block");
      return;
    } else if (stack_.back().name != "DIS") {
      fail("misplaced_tag", name, line, column,
           "<" + name + "> cannot be nested inside <" + stack_.back().name + ">");
      return;
    }
    stack_.push_back({name, line, column, {}, std::move(synonyms)});
  }

  void close_tag(const std::string& name, int line, int column) {
    if (stack_.empty() || stack_.back().name != name) {
      const std::string expected = stack_.empty() ? "no open tag" : "</" + stack_.back().name + ">";
      fail("unbalanced_tag", name, line, column, "unexpected </" + name + ">, expected " + expected);
      return;
    }
    OpenTag open = std::move(stack_.back());
    stack_.pop_back();
    const std::string value = collapse_whitespace(open.text);

    if (name == "DIS") {
      if (value.empty()) {
        fail("empty_value", name, open.line, open.column, "disease block has no name");
        return;
      }
      const std::string id = normalize_identifier(value);
      if (!is_valid_identifier(id)) {
        fail("invalid_value", name, open.line, open.column, "disease name '" + value + "' does not yield a valid id");
        return;
      }
      current_->disease = value;
      current_->disease_id = id;
      result_.records.push_back(std::move(*current_));
      current_.reset();
      return;
    }

    if (value.empty()) {
      fail("empty_value", name, open.line, open.column, "<" + name + "> is empty");
      return;
    }
    if (name == "ALT") {
      if (current_->alt_name) {
        fail("misplaced_tag", name, open.line, open.column, "a disease block takes at most one <ALT>");
        return;
      }
      current_->alt_name = value;
      return;
    }

    RecordItem item{normalize_identifier(value), value, std::move(open.synonyms)};
    if (!is_valid_identifier(item.id)) {
      fail("invalid_value", name, open.line, open.column, "'" + value + "' does not yield a valid id");
      return;
    }
    std::vector<RecordItem>* list = nullptr;
    if (name == "SYM") list = &current_->symptoms;
    else if (name == "CAU") list = &current_->causes;
    else if (name == "TRP") list = &current_->principles;
    else if (name == "REG") list = &current_->regimental;
    else list = &current_->preventions;

    const bool duplicate = std::any_of(list->begin(), list->end(),
                                       [&](const RecordItem& existing) { return existing.id == item.id; });
    if (duplicate) {
      result_.warnings.push_back((doc_.source_name.empty() ? std::string("<input>") : doc_.source_name) + ":" +
                                 std::to_string(open.line) + ":" + std::to_string(open.column) +
                                 ": duplicate <" + name + "> '" + item.id + "' dropped");
      return;
    }
    list->push_back(std::move(item));
  }

  const TaggedDocument& doc_;
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool skipping_ = false;
  std::vector<OpenTag> stack_;
  std::optional<DiseaseRecord> current_;
  ScanResult result_;
};

std::string escape_text(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void format_items(std::string& out, std::string_view tag, const std::vector<RecordItem>& items) {
  for (const auto& item : items) {
    out += "  <";
    out += tag;
    if (!item.synonyms.empty()) {
      out += " syn=\"";
      for (std::size_t i = 0; i < item.synonyms.size(); ++i) {
        if (i > 0) out += "|";
        out += escape_text(item.synonyms[i]);
      }
      out += "\"";
    }
    out += ">" + escape_text(item.label) + "</" + std::string(tag) + ">\n";
  }
}

}  // namespace

ScanResult scan_tagged_text(const TaggedDocument& doc) { return Scanner(doc).run(); }

std::vector<DiseaseRecord> parse_tagged_text(const TaggedDocument& doc) {
  auto result = scan_tagged_text(doc);
  if (!result.errors.empty()) throw result.errors.front();
  return std::move(result.records);
}

std::string format_tagged_text(const std::vector<DiseaseRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += "<DIS>" + escape_text(r.disease) + "\n";
    if (r.alt_name) out += "  <ALT>" + escape_text(*r.alt_name) + "</ALT>\n";
    format_items(out, "SYM", r.symptoms);
    format_items(out, "CAU", r.causes);
    format_items(out, "TRP", r.principles);
    format_items(out, "REG", r.regimental);
    format_items(out, "PRE", r.preventions);
    out += "</DIS>\n";
  }
  return out;
}

}  // namespace unani::ingest
