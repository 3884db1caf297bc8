#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "strfix/corruptor.hpp"
#include "strfix/pipeline.hpp"

namespace strfix {

/// Full system followed by the four ablations.
const std::vector<std::string>& ablation_modes();

/// `base` with one ablation switched on; throws ConfigError on an unknown
/// name.
RunConfig with_mode(RunConfig base, const std::string& mode);

/// Top-1 suggestion of every repaired value.
std::vector<RepairCandidate> top_suggestions(const std::vector<ColumnResult>& results);

struct CorruptedCase {
  std::string name;
  Table table;
  CorruptionLog log;
};

struct FormulaCase {
  std::string name;
  Table table;
  std::string formula;
};

struct Corpus {
  std::vector<CorruptedCase> corrupted;
  std::vector<FormulaCase> formulas;

  bool empty() const { return corrupted.empty() && formulas.empty(); }
};

/// Reads NAME.csv with NAME.log.json pairs and *.jsonl formula cases
/// ({"table": "x.csv", "formula": "=..."} per line, paths relative to the
/// directory). Throws std::runtime_error when nothing usable is found.
Corpus load_corpus(const std::string& directory, const IngestOptions& options = {});

struct BenchRow {
  std::string mode;
  RecallScore recall;
  double fire_rate = 0.0;
  std::size_t columns = 0;
  std::size_t formula_cases = 0;
  std::size_t guided_formula_success = 0;
  std::size_t unsupervised_formula_success = 0;
  double guided_cell_success = 0.0;
  double unsupervised_cell_success = 0.0;
  double seconds = 0.0;
};

BenchRow run_bench(const Corpus& corpus, const RunConfig& config, SemanticOracle* oracle, const std::string& mode);

nlohmann::json bench_json(const BenchRow& row, bool timings);

}  // namespace strfix
