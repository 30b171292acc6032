#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unani/rules/ast.hpp"

namespace unani::inference {

struct GroundAtom {
  rules::Predicate predicate = rules::Predicate::symptoms;
  std::string constant;

  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

/// "Symptoms(running_nose)"
[[nodiscard]] std::string format_ground_atom(const GroundAtom& atom);

[[nodiscard]] inline GroundAtom ground(const rules::Atom& atom) { return {atom.predicate, atom.constant}; }

struct TraceStep {
  std::string rule_id;  // kAssertedStep for externally asserted atoms
  std::vector<GroundAtom> added;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Ground atoms known for one diagnostic episode plus the trace of how each
/// arrived. Atoms are never retracted, so replaying the trace from an empty
/// memory reproduces `atoms()` exactly.
class WorkingMemory {
 public:
  static constexpr std::string_view kAssertedStep = "assert";

  WorkingMemory() = default;
  explicit WorkingMemory(std::span<const GroundAtom> initial) { assert_atoms(initial); }

  /// Adds atoms from outside the engine; returns how many were new.
  std::size_t assert_atoms(std::span<const GroundAtom> atoms);

  /// Records a rule firing; atoms already present are skipped. Returns the
  /// newly added atoms (no trace step is recorded when there are none).
  std::vector<GroundAtom> record_firing(const std::string& rule_id, std::span<const GroundAtom> atoms);

  [[nodiscard]] bool contains(const GroundAtom& atom) const { return atoms_.contains(atom); }
  [[nodiscard]] const std::set<GroundAtom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] const std::vector<TraceStep>& trace() const noexcept { return trace_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }

  [[nodiscard]] static std::set<GroundAtom> replay(const std::vector<TraceStep>& trace);

 private:
  std::set<GroundAtom> atoms_;
  std::vector<TraceStep> trace_;
};

}  // namespace unani::inference
