#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "strfix/bench.hpp"
#include "strfix/corruptor.hpp"
#include "strfix/exec_repair.hpp"
#include "strfix/formula.hpp"
#include "strfix/pipeline.hpp"
#include "strfix/report.hpp"
#include "strfix/semantics.hpp"

#ifndef STRFIX_DEFAULT_GAZETTEERS
#define STRFIX_DEFAULT_GAZETTEERS "data/gazetteers"
#endif

using namespace strfix;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUnrepairable = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  RunConfig config;
  std::string input;
  std::string output;
  std::string semantic = "full";
  std::string concretization = "learned";
  std::string ranking = "heuristic";
  std::string weights;
  std::string types;
  std::string gazetteers = STRFIX_DEFAULT_GAZETTEERS;
  bool no_header = false;
  bool timings = false;
};

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--delta", o.config.delta, "Minimum coverage of a significant pattern")->capture_default_str();
  cmd->add_option("--k", o.config.k, "Pattern budget per column")->capture_default_str();
  cmd->add_option("--alpha", o.config.alpha, "Minimum training accuracy of a constraint tree")->capture_default_str();
  cmd->add_option("--weights", o.weights, "Ranking weights w1,w2,w3,w4");
  cmd->add_option("--top-n", o.config.top_n, "Suggestions kept per value")->capture_default_str();
  cmd->add_option("--semantic", o.semantic, "full, no_abstraction or reuse_only")->capture_default_str();
  cmd->add_option("--concretization", o.concretization, "learned or frequency_only")->capture_default_str();
  cmd->add_option("--ranking", o.ranking, "heuristic or edit_distance")->capture_default_str();
  cmd->add_option("--seed", o.config.seed, "Seed echoed in the report")->capture_default_str();
  cmd->add_flag("--flag-empty", o.config.flag_empty, "Treat empty cells as values to check");
  cmd->add_flag("--no-header", o.no_header, "The first CSV row is data");
  cmd->add_option("--jobs", o.config.jobs, "Columns processed concurrently")->capture_default_str();
  cmd->add_flag("--guided-semantic", o.config.guided_semantic, "Keep semantic abstraction in guided repair");
  cmd->add_option("--types", o.types, "Semantic type list file");
  cmd->add_option("--gazetteers", o.gazetteers, "Directory of gazetteer JSON files")->capture_default_str();
  cmd->add_option("--oracle", o.config.oracle, "dictionary, http or none")->capture_default_str();
  cmd->add_flag("--timings", o.timings, "Add wall-clock timings to the report");
  cmd->add_option("-o,--out", o.output, "Write the report here instead of stdout");
}

void finish_config(Options& o) {
  auto& c = o.config;
  if (o.semantic == "full") {
    c.semantic = SemanticMode::full;
  } else if (o.semantic == "no_abstraction") {
    c.semantic = SemanticMode::no_abstraction;
  } else if (o.semantic == "reuse_only") {
    c.semantic = SemanticMode::reuse_only;
  } else {
    throw ConfigError("--semantic must be full, no_abstraction or reuse_only");
  }
  if (o.concretization == "learned") {
    c.concretization = ConcretizationMode::learned;
  } else if (o.concretization == "frequency_only") {
    c.concretization = ConcretizationMode::frequency_only;
  } else {
    throw ConfigError("--concretization must be learned or frequency_only");
  }
  if (o.ranking == "heuristic") {
    c.ranking = RankingMode::heuristic;
  } else if (o.ranking == "edit_distance") {
    c.ranking = RankingMode::edit_distance;
  } else {
    throw ConfigError("--ranking must be heuristic or edit_distance");
  }
  if (!o.weights.empty()) {
    try {
      c.weights = RankWeights::parse(o.weights);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--weights: ") + e.what());
    }
  }
  if (!o.types.empty()) c.types = SemanticTypeList::load(o.types);
  c.validate();
}

std::unique_ptr<SemanticOracle> make_oracle(const Options& o) {
  const auto& which = o.config.oracle;
  if (which == "none" || o.config.semantic == SemanticMode::no_abstraction) return nullptr;
  if (which == "http") {
    auto env = HttpOracleConfig::from_env();
    if (!env) throw UsageError("--oracle http needs ORACLE_URL");
    return std::make_unique<HttpOracle>(*env);
  }
  return std::make_unique<DictionaryOracle>(DictionaryOracle::from_directory(o.gazetteers));
}

IngestOptions ingest(const Options& o) {
  IngestOptions io;
  io.has_header = !o.no_header;
  return io;
}

void emit(const Options& o, const json& report) {
  const std::string text = dump_json(report) + "\n";
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + o.output + "'");
  out << text;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << to_csv(table);
}

json header(const std::string& command, const Options& o) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"input", o.input},
          {"config", config_json(o.config)}};
}

int cmd_detect_or_repair(Options& o, bool repair, const std::string& apply_path) {
  finish_config(o);
  const Table table = load_table_file(o.input, ingest(o));
  auto oracle = make_oracle(o);
  const auto results = run_table(table, o.config, oracle.get(), repair);
  json report = header(repair ? "repair" : "detect", o);
  json columns = json::array();
  std::size_t unrepairable = 0;
  for (const auto& r : results) {
    columns.push_back(column_json(r, repair, o.timings));
    unrepairable += r.unrepairable();
  }
  report["columns"] = columns;
  report["fire_rate"] = mean_fire_rate(results);
  if (repair) report["unrepairable"] = unrepairable;
  emit(o, report);
  if (repair && !apply_path.empty()) write_csv(apply_path, apply_repairs(table, results));
  return repair && unrepairable ? kUnrepairable : kOk;
}

std::string read_formula(const std::string& text) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw UsageError("cannot read formula file '" + text.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  }
  return text;
}

int cmd_exec_repair(Options& o, const std::string& formula_text, const std::string& apply_path) {
  finish_config(o);
  const Table table = load_table_file(o.input, ingest(o));
  const auto program = FormulaProgram::parse(read_formula(formula_text));
  program.validate(table);
  auto oracle = make_oracle(o);
  const auto plain = unsupervised_exec_repair(program, table, o.config, oracle.get());
  const auto guided = execution_guided_repair(program, table, o.config, oracle.get());
  json report = header("exec-repair", o);
  report["formula"] = program.source();
  report["unsupervised"] = exec_json(plain, o.timings);
  report["guided"] = exec_json(guided, o.timings);
  emit(o, report);
  if (!apply_path.empty()) {
    Table out = table;
    for (const auto& a : guided.applied) out.set_cell(*out.column_index(a.column), a.row, CellValue::from_text(a.value));
    write_csv(apply_path, out);
  }
  return guided.after.formula_success ? kOk : kUnrepairable;
}

struct CorruptArgs {
  std::string in;
  std::string out;
  std::string log;
  std::uint64_t seed = 0;
  double rate = 0.2;
  std::vector<std::string> ops;
  bool no_header = false;
};

int cmd_corrupt(const CorruptArgs& a) {
  NoiseSpec spec;
  spec.cell_probability = a.rate;
  spec.seed = a.seed;
  if (!a.ops.empty()) {
    spec.enabled_ops.clear();
    for (const auto& name : a.ops) {
      const auto op = parse_noise_op(name);
      if (!op) throw ConfigError("unknown noise operation '" + name + "'");
      spec.enabled_ops.push_back(*op);
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  IngestOptions io;
  io.has_header = !a.no_header;
  const Table clean = load_table_file(a.in, io);
  auto [dirty, log] = corrupt(clean, spec);
  write_csv(a.out, dirty);
  std::ofstream out(a.log, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + a.log + "'");
  out << dump_json(log.to_json()) << "\n";
  std::cerr << "corrupted " << log.entries.size() << " of " << log.eligible_cells << " cells\n";
  return kOk;
}

int cmd_bench(Options& o, const std::vector<std::string>& modes) {
  finish_config(o);
  const Corpus corpus = load_corpus(o.input, ingest(o));
  auto oracle = make_oracle(o);
  std::vector<std::string> sweep = modes;
  if (sweep.empty()) sweep = {"full"};
  if (sweep.size() == 1 && sweep.front() == "all") sweep = ablation_modes();
  json rows = json::array();
  for (const auto& mode : sweep) rows.push_back(bench_json(run_bench(corpus, o.config, oracle.get(), mode), o.timings));
  json report = header("bench", o);
  report["corrupted_tables"] = corpus.corrupted.size();
  report["formula_cases"] = corpus.formulas.size();
  report["rows"] = rows;
  emit(o, report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strfix: unsupervised detection and repair of string errors in tables"};
  app.require_subcommand(1);

  Options opts;
  std::string apply_path;
  std::string formula;
  std::vector<std::string> modes;
  CorruptArgs corrupt_args;

  auto* detect = app.add_subcommand("detect", "Flag values outside every significant pattern");
  detect->add_option("input", opts.input, "CSV file")->required();
  add_run_flags(detect, opts);

  auto* repair = app.add_subcommand("repair", "Detect and suggest ranked repairs");
  repair->add_option("input", opts.input, "CSV file")->required();
  repair->add_option("--apply", apply_path, "Write the table with top-1 repairs applied");
  add_run_flags(repair, opts);

  auto* exec = app.add_subcommand("exec-repair", "Repair formula inputs, unsupervised and execution-guided");
  exec->add_option("--input,input", opts.input, "CSV file")->required();
  exec->add_option("--formula", formula, "Formula text, or @file")->required();
  exec->add_option("--apply", apply_path, "Write the table with guided repairs applied");
  add_run_flags(exec, opts);

  auto* corrupt_cmd = app.add_subcommand("corrupt", "Inject synthetic string noise and log it");
  corrupt_cmd->add_option("--in", corrupt_args.in, "Clean CSV")->required();
  corrupt_cmd->add_option("--out", corrupt_args.out, "Corrupted CSV")->required();
  corrupt_cmd->add_option("--log", corrupt_args.log, "Corruption log (JSON)")->required();
  corrupt_cmd->add_option("--seed", corrupt_args.seed)->capture_default_str();
  corrupt_cmd->add_option("--rate", corrupt_args.rate, "Cell corruption probability")->capture_default_str();
  corrupt_cmd->add_option("--ops", corrupt_args.ops, "Enabled operations")->delimiter(',');
  corrupt_cmd->add_flag("--no-header", corrupt_args.no_header);

  auto* bench = app.add_subcommand("bench", "Aggregate metrics over a corpus directory");
  bench->add_option("corpus", opts.input, "Directory with NAME.csv + NAME.log.json and *.jsonl cases")->required();
  bench->add_option("--mode", modes, "Modes to sweep, or 'all'")->delimiter(',');
  add_run_flags(bench, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*detect) return cmd_detect_or_repair(opts, false, "");
    if (*repair) return cmd_detect_or_repair(opts, true, apply_path);
    if (*exec) return cmd_exec_repair(opts, formula, apply_path);
    if (*corrupt_cmd) return cmd_corrupt(corrupt_args);
    if (*bench) return cmd_bench(opts, modes);
  } catch (const ConfigError& e) {
    std::cerr << "strfix: " << e.what() << "\n";
    return kUsage;
  } catch (const IngestError& e) {
    std::cerr << "strfix: " << e.what() << "\n";
    return kUsage;
  } catch (const FormulaError& e) {
    std::cerr << "strfix: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "strfix: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "strfix: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
