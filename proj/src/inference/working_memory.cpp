#include "unani/inference/working_memory.hpp"

namespace unani::inference {

std::string format_ground_atom(const GroundAtom& atom) {
  return std::string(rules::to_string(atom.predicate)) + "(" + atom.constant + ")";
}

std::size_t WorkingMemory::assert_atoms(std::span<const GroundAtom> atoms) {
  TraceStep step{std::string(kAssertedStep), {}};
  for (const auto& a : atoms) {
    if (atoms_.insert(a).second) step.added.push_back(a);
  }
  const std::size_t added = step.added.size();
  if (added > 0) trace_.push_back(std::move(step));
  return added;
}

std::vector<GroundAtom> WorkingMemory::record_firing(const std::string& rule_id,
                                                     std::span<const GroundAtom> atoms) {
  std::vector<GroundAtom> added;
  for (const auto& a : atoms) {
    if (atoms_.insert(a).second) added.push_back(a);
  }
  if (!added.empty()) trace_.push_back({rule_id, added});
  return added;
}

std::set<GroundAtom> WorkingMemory::replay(const std::vector<TraceStep>& trace) {
  std::set<GroundAtom> out;
  for (const auto& step : trace) out.insert(step.added.begin(), step.added.end());
  return out;
}

}  // namespace unani::inference
