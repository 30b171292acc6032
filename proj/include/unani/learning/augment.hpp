#pragma once

#include "unani/learning/dataset.hpp"

namespace unani::learning {

/// Leave-one-out augmentation, applied level by level up to `depth` removals.
/// Level k expands the rows accepted at level k-1 (level 1 expands the source
/// rows) in row order, dropping one set bit at a time in ascending index
/// order. A candidate is kept as an `augmented` row when it has a set bit and
/// its vector is claimed by no other label, neither by an existing row nor by
/// another candidate of the same level. Candidates equal to a row of their own
/// label are merged into it.
///
/// Throws LearningError(duplicate_vector) when two source rows share a
/// vector and LearningError(invalid_depth) when depth < 0.
[[nodiscard]] LabeledDataset augment_leave_one_out(const LabeledDataset& ds, int depth = 1);

}  // namespace unani::learning
