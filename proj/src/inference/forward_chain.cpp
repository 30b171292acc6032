#include <deque>
#include <map>

#include "unani/inference/engine.hpp"

namespace unani::inference {

WorkingMemory forward_chain(const std::vector<rules::RuleAst>& rules, WorkingMemory wm) {
  // remaining[i] counts distinct antecedents of rule i not yet in memory.
  std::vector<std::size_t> remaining(rules.size(), 0);
  std::map<GroundAtom, std::vector<std::size_t>> watchers;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::set<GroundAtom> ante;
    for (const auto& a : rules[i].antecedents) ante.insert(ground(a));
    remaining[i] = ante.size();
    for (const auto& g : ante) watchers[g].push_back(i);
  }

  std::deque<GroundAtom> agenda(wm.atoms().begin(), wm.atoms().end());
  auto fire = [&](std::size_t i) {
    std::vector<GroundAtom> cons;
    cons.reserve(rules[i].consequents.size());
    for (const auto& a : rules[i].consequents) cons.push_back(ground(a));
    for (auto& g : wm.record_firing(rules[i].id, cons)) agenda.push_back(std::move(g));
  };

  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (remaining[i] == 0) fire(i);
  }
  while (!agenda.empty()) {
    GroundAtom atom = std::move(agenda.front());
    agenda.pop_front();
    auto it = watchers.find(atom);
    if (it == watchers.end()) continue;
    for (std::size_t i : it->second) {
      if (--remaining[i] == 0) fire(i);
    }
  }
  return wm;
}

}  // namespace unani::inference
