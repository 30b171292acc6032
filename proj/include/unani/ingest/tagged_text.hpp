#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unani/common/error.hpp"

namespace unani::ingest {

/// Source text carrying inline markup from the closed tag set
/// DIS, ALT, SYM, CAU, TRP, REG, PRE. Example:
///
///   <DIS>Migraine<ALT>Shaqīqa</ALT>
///     <SYM>half head episodic throbbing pain</SYM>
///     <SYM syn="throbbing headache">whole head sometimes</SYM>
///   </DIS>
///
/// SYM and CAU accept one optional attribute, syn="a|b", listing synonym
/// phrases. Text outside DIS blocks is ignored.
struct TaggedDocument {
  std::string source_name;
  std::string text;
};

struct RecordItem {
  std::string id;     // normalized identifier
  std::string label;  // original text, whitespace-collapsed
  std::vector<std::string> synonyms;

  friend bool operator==(const RecordItem&, const RecordItem&) = default;
};

/// Key/value view of one DIS block; lists keep document order.
struct DiseaseRecord {
  std::string disease_id;
  std::string disease;
  std::optional<std::string> alt_name;
  std::vector<RecordItem> symptoms;
  std::vector<RecordItem> causes;
  std::vector<RecordItem> principles;
  std::vector<RecordItem> regimental;
  std::vector<RecordItem> preventions;

  friend bool operator==(const DiseaseRecord&, const DiseaseRecord&) = default;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

/// Markup error with a source position. code() is one of unknown_tag,
/// unbalanced_tag, tag_outside_disease_block, misplaced_tag, empty_value,
/// invalid_value, malformed_markup.
class TagError : public IngestError {
 public:
  TagError(std::string code, std::string tag, std::string source, int line, int column,
           const std::string& message);

  [[nodiscard]] const std::string& tag() const noexcept { return tag_; }
  [[nodiscard]] const std::string& source() const noexcept { return source_; }
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  std::string tag_;
  std::string source_;
  int line_;
  int column_;
};

struct ScanResult {
  std::vector<DiseaseRecord> records;
  std::vector<TagError> errors;
  std::vector<std::string> warnings;
};

/// Parses every DIS block, recovering after an error at the next top-level
/// DIS so that all problems in a file are reported at once. Blocks with an
/// error are left out of `records`.
[[nodiscard]] ScanResult scan_tagged_text(const TaggedDocument& doc);

/// Strict form of scan_tagged_text: throws the first TagError.
[[nodiscard]] std::vector<DiseaseRecord> parse_tagged_text(const TaggedDocument& doc);

/// Canonical markup for `records`; parse_tagged_text inverts it.
[[nodiscard]] std::string format_tagged_text(const std::vector<DiseaseRecord>& records);

}  // namespace unani::ingest
