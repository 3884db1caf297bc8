#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strfix/concretizer.hpp"
#include "strfix/detector.hpp"
#include "strfix/profiler.hpp"
#include "strfix/ranker.hpp"
#include "strfix/semantics.hpp"
#include "strfix/table.hpp"

namespace strfix {

enum class SemanticMode { full, no_abstraction, reuse_only };
enum class ConcretizationMode { learned, frequency_only };
enum class RankingMode { heuristic, edit_distance };

std::string_view to_string(SemanticMode m);
std::string_view to_string(ConcretizationMode m);
std::string_view to_string(RankingMode m);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double delta = 0.2;
  std::size_t k = 6;
  double alpha = 0.8;
  RankWeights weights;
  std::size_t top_n = 1;
  /// "dictionary", "http" or "none".
  std::string oracle = "dictionary";
  SemanticMode semantic = SemanticMode::full;
  ConcretizationMode concretization = ConcretizationMode::learned;
  RankingMode ranking = RankingMode::heuristic;
  std::uint64_t seed = 0;
  bool flag_empty = false;
  std::size_t jobs = 1;
  std::size_t max_programs = 10;
  bool guided_semantic = false;
  double string_threshold = 0.9;
  SemanticTypeList types = SemanticTypeList::defaults();

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  RankWeights effective_weights() const;
};

/// Ranked suggestions for one detected value.
struct ValueRepair {
  std::size_t row = 0;
  std::string original;
  std::string masked;
  /// Top-n after ranking.
  std::vector<RepairCandidate> candidates;
  std::vector<std::string> dropped;
};

struct ConstraintRecord {
  std::string pattern_id;
  std::string slot;
  ConstraintTree tree;
  /// Description of each predicate the tree splits on, by feature index.
  std::map<int, std::string> predicates;
};

struct ColumnResult {
  std::string column;
  std::size_t column_index = 0;
  std::vector<Pattern> patterns;
  std::vector<std::size_t> significant;
  MaskAlphabet alphabet;
  std::size_t row_count = 0;
  std::size_t profiled_values = 0;
  std::vector<Detection> detections;
  double fire_rate = 0.0;
  std::vector<ValueRepair> repairs;
  std::vector<ConstraintRecord> constraints;
  std::vector<std::string> warnings;
  bool repaired = false;
  double seconds = 0.0;

  std::size_t unrepairable() const;
};

/// Which rows feed pattern learning and which are checked against the
/// learned patterns.
struct ColumnPlan {
  std::vector<std::size_t> profile_rows;
  std::vector<std::size_t> check_rows;
  bool all_significant = false;
  SemanticMode semantic = SemanticMode::full;
};

/// Rows with a usable value: non-na, and non-empty unless flag_empty.
std::vector<std::size_t> usable_rows(const Column& column, bool flag_empty);

ColumnResult run_column(const Table& table, std::size_t column, const ColumnPlan& plan, const RunConfig& config,
                        SemanticOracle* oracle, const FeatureSet& features, bool repair);

/// Unsupervised detection (and repair) over the string columns of a table,
/// `config.jobs` columns at a time. Results are in column order.
std::vector<ColumnResult> run_table(const Table& table, const RunConfig& config, SemanticOracle* oracle, bool repair);

/// Copy of `table` with the top-1 suggestion of every repaired value applied.
Table apply_repairs(const Table& table, const std::vector<ColumnResult>& results);

}  // namespace strfix
