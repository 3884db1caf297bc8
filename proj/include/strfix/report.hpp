#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "strfix/corruptor.hpp"
#include "strfix/exec_repair.hpp"
#include "strfix/pipeline.hpp"

namespace strfix {

inline constexpr int kSchemaVersion = 1;

/// Serializes JSON with every floating-point number printed with six
/// decimals, so equal inputs give byte-identical text.
std::string dump_json(const nlohmann::json& value, int indent = 2);

nlohmann::json config_json(const RunConfig& config);
nlohmann::json tree_json(const ConstraintTree& tree, const std::map<int, std::string>& predicates);
nlohmann::json candidate_json(const RepairCandidate& candidate);
nlohmann::json column_json(const ColumnResult& result, bool with_repairs, bool timings);
nlohmann::json verification_json(const Verification& v);
nlohmann::json exec_json(const ExecRepairResult& result, bool timings);
nlohmann::json recall_json(const RecallScore& score);

/// Mean of the per-column fire rates (0 when there are no columns).
double mean_fire_rate(const std::vector<ColumnResult>& results);

}  // namespace strfix
