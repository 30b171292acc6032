#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "unani/inference/working_memory.hpp"
#include "unani/learning/dataset.hpp"
#include "unani/learning/prompts.hpp"
#include "unani/rules/ast.hpp"
#include "unani/service/store.hpp"

namespace unani::testing {

/// Repeat-until-stable: sweep every rule, add consequents of any rule whose
/// antecedents all hold, stop after a sweep that adds nothing.
std::set<inference::GroundAtom> naive_fixpoint(const std::vector<rules::RuleAst>& rules,
                                               std::set<inference::GroundAtom> atoms);

/// Exhaustive leave-one-out enumeration with linear scans: every candidate
/// of a level is compared against every row and every other candidate.
learning::LabeledDataset brute_force_augment(const learning::LabeledDataset& ds, int depth);

/// True iff no vector appears under two different labels.
bool vectors_label_unique(const learning::LabeledDataset& ds);

/// Direct multinomial naive Bayes posterior from the raw corpus (counts by
/// rescanning sentences for every query).
std::map<std::string, double> naive_bayes_posterior(const learning::PromptCorpus& corpus, const std::string& text);

/// Gini impurity decrease of splitting `rows` on feature f, in long double.
long double gini_gain(const learning::LabeledDataset& ds, std::size_t feature);

/// Dashboard figures recomputed from raw store contents.
nlohmann::json recount_stats(const service::StoreState& state);

}  // namespace unani::testing
