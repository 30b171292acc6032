#pragma once

#include <vector>

#include "unani/ingest/tagged_text.hpp"
#include "unani/knowledge/knowledge_base.hpp"

namespace unani::ingest {

/// Builds a knowledge base from parsed records. SYM/CAU items become
/// findings, TRP/REG/PRE items become principle/regimental/prevention
/// treatments. Items shared between diseases are merged by id, so the result
/// does not depend on record order.
///
/// Throws IngestError with code finding_kind_collision (one id used as both a
/// symptom and a cause), treatment_category_collision, duplicate_disease, or
/// invalid_kb when the merged graph fails kb_validate.
[[nodiscard]] kb::KnowledgeBase records_to_kb(const std::vector<DiseaseRecord>& records);

}  // namespace unani::ingest
