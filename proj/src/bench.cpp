#include "strfix/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "strfix/exec_repair.hpp"
#include "strfix/formula.hpp"

namespace strfix {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& ablation_modes() {
  static const std::vector<std::string> kModes = {"full", "no_abstraction", "reuse_only", "frequency_only",
                                                   "edit_distance"};
  return kModes;
}

RunConfig with_mode(RunConfig c, const std::string& mode) {
  if (mode == "full") return c;
  if (mode == "no_abstraction") {
    c.semantic = SemanticMode::no_abstraction;
  } else if (mode == "reuse_only") {
    c.semantic = SemanticMode::reuse_only;
  } else if (mode == "frequency_only") {
    c.concretization = ConcretizationMode::frequency_only;
  } else if (mode == "edit_distance") {
    c.ranking = RankingMode::edit_distance;
  } else {
    throw ConfigError("unknown mode '" + mode + "'");
  }
  return c;
}

std::vector<RepairCandidate> top_suggestions(const std::vector<ColumnResult>& results) {
  std::vector<RepairCandidate> out;
  for (const auto& r : results) {
    for (const auto& v : r.repairs) {
      if (!v.candidates.empty()) out.push_back(v.candidates.front());
    }
  }
  return out;
}

Corpus load_corpus(const std::string& directory, const IngestOptions& options) {
  if (!fs::is_directory(directory)) throw std::runtime_error("corpus directory '" + directory + "' not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(directory)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Corpus corpus;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    if (path.extension() == ".csv") {
      const fs::path log_path = path.parent_path() / (path.stem().string() + ".log.json");
      if (!fs::exists(log_path)) continue;
      std::ifstream in(log_path);
      CorruptedCase c{path.stem().string(), load_table_file(path.string(), options),
                      CorruptionLog::from_json(json::parse(in))};
      corpus.corrupted.push_back(std::move(c));
    } else if (path.extension() == ".jsonl") {
      std::ifstream in(path);
      std::string line;
      std::size_t n = 0;
      while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json doc = json::parse(line);
        const fs::path table = path.parent_path() / doc.at("table").get<std::string>();
        corpus.formulas.push_back({name + ":" + std::to_string(n), load_table_file(table.string(), options),
                                   doc.at("formula").get<std::string>()});
      }
    }
  }
  if (corpus.empty()) throw std::runtime_error("corpus '" + directory + "' holds no benchmark cases");
  return corpus;
}

BenchRow run_bench(const Corpus& corpus, const RunConfig& base, SemanticOracle* oracle, const std::string& mode) {
  const auto started = std::chrono::steady_clock::now();
  const RunConfig config = with_mode(base, mode);
  BenchRow row;
  row.mode = mode;
  double fire_total = 0.0;
  for (const auto& c : corpus.corrupted) {
    const auto results = run_table(c.table, config, oracle, true);
    const auto top = top_suggestions(results);
    const auto s = score_recall(c.log, top);
    row.recall.corrupted += s.corrupted;
    row.recall.reverted += s.reverted;
    row.recall.repairs += s.repairs;
    for (const auto& r : results) fire_total += r.fire_rate;
    row.columns += results.size();
  }
  auto& s = row.recall;
  if (s.corrupted) s.recall = static_cast<double>(s.reverted) / static_cast<double>(s.corrupted);
  if (s.repairs) s.precision_lower_bound = static_cast<double>(s.reverted) / static_cast<double>(s.repairs);
  if (s.recall + s.precision_lower_bound > 0) s.f1 = 2 * s.recall * s.precision_lower_bound / (s.recall + s.precision_lower_bound);
  if (row.columns) row.fire_rate = fire_total / static_cast<double>(row.columns);

  for (const auto& f : corpus.formulas) {
    const auto program = FormulaProgram::parse(f.formula);
    const auto guided = execution_guided_repair(program, f.table, config, oracle);
    const auto plain = unsupervised_exec_repair(program, f.table, config, oracle);
    ++row.formula_cases;
    row.guided_formula_success += guided.after.formula_success;
    row.unsupervised_formula_success += plain.after.formula_success;
    row.guided_cell_success += guided.after.cell_success_rate;
    row.unsupervised_cell_success += plain.after.cell_success_rate;
  }
  if (row.formula_cases) {
    row.guided_cell_success /= static_cast<double>(row.formula_cases);
    row.unsupervised_cell_success /= static_cast<double>(row.formula_cases);
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return row;
}

json bench_json(const BenchRow& r, bool timings) {
  json out = {
      {"mode", r.mode},
      {"columns", r.columns},
      {"fire_rate", r.fire_rate},
      {"recall", r.recall.recall},
      {"precision_lower_bound", r.recall.precision_lower_bound},
      {"f1", r.recall.f1},
      {"corrupted", r.recall.corrupted},
      {"reverted", r.recall.reverted},
      {"repairs", r.recall.repairs},
      {"formula_cases", r.formula_cases},
      {"guided_formula_success", r.guided_formula_success},
      {"unsupervised_formula_success", r.unsupervised_formula_success},
      {"guided_cell_success", r.guided_cell_success},
      {"unsupervised_cell_success", r.unsupervised_cell_success},
  };
  if (timings) out["seconds"] = r.seconds;
  return out;
}

}  // namespace strfix
