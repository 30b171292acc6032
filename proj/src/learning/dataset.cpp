#include "unani/learning/dataset.hpp"

#include <algorithm>
#include <sstream>

#include "unani/common/identifier.hpp"

namespace unani::learning {

std::optional<std::size_t> FeatureSpace::index_of(std::string_view id) const {
  auto it = std::lower_bound(features.begin(), features.end(), id);
  if (it == features.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - features.begin());
}

const char* to_string(RowOrigin origin) noexcept {
  return origin == RowOrigin::source ? "source" : "augmented";
}

std::size_t LabeledDataset::count(RowOrigin origin) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const LabeledRow& r) { return r.origin == origin; }));
}

std::set<std::string> LabeledDataset::labels() const {
  std::set<std::string> out;
  for (const auto& r : rows) out.insert(r.label);
  return out;
}

std::size_t popcount(const FeatureVector& v) noexcept {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
}

FeatureVector encode(const FeatureSpace& space, const std::set<std::string>& findings) {
  FeatureVector v(space.size(), false);
  for (const auto& id : findings) {
    if (auto i = space.index_of(id)) v[*i] = true;
  }
  return v;
}

LabeledDataset kb_to_dataset(const kb::KnowledgeBase& kb) {
  if (kb.diseases().empty()) throw LearningError("empty_kb", "knowledge base has no diseases");
  LabeledDataset ds;
  for (const auto& [id, f] : kb.findings()) ds.space.features.push_back(id);
  for (const auto& [id, d] : kb.diseases()) {
    const auto fs = kb.findings_of(id);
    ds.rows.push_back({encode(ds.space, {fs.begin(), fs.end()}), id, RowOrigin::source});
  }
  return ds;
}

std::string dataset_to_csv(const LabeledDataset& ds) {
  std::string out;
  for (const auto& f : ds.space.features) out += f + ",";
  out += "label,origin\n";
  for (const auto& r : ds.rows) {
    for (bool b : r.vector) out += b ? "1," : "0,";
    out += r.label + "," + to_string(r.origin) + "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(collapse_whitespace(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void bad_csv(std::size_t line, const std::string& msg) {
  throw LearningError("malformed_csv", "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

LabeledDataset dataset_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  LabeledDataset ds;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (collapse_whitespace(line).empty()) continue;
    auto cells = split_cells(line);
    if (!have_header) {
      if (cells.size() < 2 || cells[cells.size() - 2] != "label" || cells.back() != "origin") {
        bad_csv(line_no, "header must end with label,origin");
      }
      ds.space.features.assign(cells.begin(), cells.end() - 2);
      if (!std::is_sorted(ds.space.features.begin(), ds.space.features.end()) ||
          std::adjacent_find(ds.space.features.begin(), ds.space.features.end()) != ds.space.features.end()) {
        bad_csv(line_no, "feature ids must be sorted and unique");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != ds.space.size() + 2) bad_csv(line_no, "wrong number of cells");
    LabeledRow row;
    row.vector.reserve(ds.space.size());
    for (std::size_t i = 0; i < ds.space.size(); ++i) {
      if (cells[i] != "0" && cells[i] != "1") bad_csv(line_no, "feature cells must be 0 or 1");
      row.vector.push_back(cells[i] == "1");
    }
    row.label = cells[ds.space.size()];
    if (row.label.empty()) bad_csv(line_no, "empty label");
    const auto& origin = cells.back();
    if (origin == "source") {
      row.origin = RowOrigin::source;
    } else if (origin == "augmented") {
      row.origin = RowOrigin::augmented;
    } else {
      bad_csv(line_no, "origin must be source or augmented");
    }
    ds.rows.push_back(std::move(row));
  }
  if (!have_header) bad_csv(line_no, "missing header");
  return ds;
}

inference::Differential distribution_to_differential(const std::map<std::string, double>& dist) {
  inference::Differential out;
  for (const auto& [label, p] : dist) {
    inference::DifferentialEntry e;
    e.disease_id = label;
    e.score = p;
    out.entries.push_back(std::move(e));
  }
  inference::rank_entries(out.entries);
  return out;
}

}  // namespace unani::learning
