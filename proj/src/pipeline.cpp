#include "strfix/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <thread>
#include <unordered_map>

#include "strfix/edit_engine.hpp"

namespace strfix {

std::string_view to_string(SemanticMode m) {
  switch (m) {
    case SemanticMode::full: return "full";
    case SemanticMode::no_abstraction: return "no_abstraction";
    case SemanticMode::reuse_only: return "reuse_only";
  }
  return "?";
}

std::string_view to_string(ConcretizationMode m) {
  return m == ConcretizationMode::learned ? "learned" : "frequency_only";
}

std::string_view to_string(RankingMode m) { return m == RankingMode::heuristic ? "heuristic" : "edit_distance"; }

void RunConfig::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("--delta must be in (0, 1]");
  if (k == 0) throw ConfigError("--k must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("--alpha must be in (0, 1]");
  if (top_n == 0) throw ConfigError("--top-n must be positive");
  if (jobs == 0) throw ConfigError("--jobs must be positive");
  if (max_programs == 0) throw ConfigError("max programs must be positive");
  if (!(string_threshold >= 0.0 && string_threshold <= 1.0)) throw ConfigError("string threshold must be in [0, 1]");
  if (oracle != "dictionary" && oracle != "http" && oracle != "none") {
    throw ConfigError("--oracle must be dictionary, http or none");
  }
  try {
    types.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RankWeights RunConfig::effective_weights() const {
  return ranking == RankingMode::edit_distance ? RankWeights::edit_distance_only() : weights;
}

std::size_t ColumnResult::unrepairable() const {
  return static_cast<std::size_t>(
      std::count_if(repairs.begin(), repairs.end(), [](const ValueRepair& r) { return r.candidates.empty(); }));
}

std::vector<std::size_t> usable_rows(const Column& column, bool flag_empty) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < column.values.size(); ++r) {
    const auto& v = column.values[r];
    if (v.is_na()) continue;
    if (v.raw.empty() && !flag_empty) continue;
    out.push_back(r);
  }
  return out;
}

namespace {

void add_unique(std::vector<std::string>& list, const std::string& item) {
  if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(item);
}

}  // namespace

ColumnResult run_column(const Table& table, std::size_t ci, const ColumnPlan& plan, const RunConfig& config,
                        SemanticOracle* oracle, const FeatureSet& features, bool repair) {
  const auto started = std::chrono::steady_clock::now();
  const Column& col = table.column(ci);
  ColumnResult r;
  r.column = col.name;
  r.column_index = ci;
  r.row_count = table.row_count();

  std::vector<std::size_t> rows;
  std::set_union(plan.profile_rows.begin(), plan.profile_rows.end(), plan.check_rows.begin(), plan.check_rows.end(),
                 std::back_inserter(rows));
  std::vector<std::string> raws;
  raws.reserve(rows.size());
  for (std::size_t row : rows) raws.push_back(col.values[row].raw);

  MaskedColumn masked = (plan.semantic != SemanticMode::no_abstraction && oracle)
                            ? abstract_column(raws, config.types, *oracle)
                            : identity_mask(raws);
  r.warnings = masked.warnings;
  const auto symbols = to_pattern_alphabet(masked);
  r.alphabet = masked.alphabet;

  std::unordered_map<std::size_t, std::size_t> index;
  std::vector<ColumnValue> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    index[rows[i]] = i;
    values[i] = {rows[i], raws[i], render_symbols(symbols[i], &r.alphabet), symbols[i]};
  }

  std::vector<SymbolString> profile;
  for (std::size_t row : plan.profile_rows) profile.push_back(symbols[index.at(row)]);
  r.profiled_values = profile.size();
  if (profile.empty()) {
    r.warnings.push_back("no values to profile");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
  }

  ProfilerOptions po;
  po.k = config.k;
  auto patterns = learn_patterns(profile, po);
  PatternSet set = plan.all_significant ? all_significant(std::move(patterns))
                                        : select_significant(std::move(patterns), config.delta);
  r.patterns = set.all;
  r.significant = set.significant;
  if (set.significant.empty()) r.warnings.push_back("no significant pattern learned; detection not possible");

  std::vector<ColumnValue> checked;
  for (std::size_t row : plan.check_rows) checked.push_back(values[index.at(row)]);
  const auto report = detect(col.name, checked, set, table.row_count());
  r.detections = report.errors;
  r.fire_rate = report.fire_rate;

  if (!repair) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
  }
  r.repaired = true;

  std::set<std::size_t> error_rows;
  for (const auto& d : r.detections) error_rows.insert(d.row);

  std::vector<std::string> clean_raws;
  for (std::size_t row : plan.profile_rows) {
    if (!error_rows.count(row)) clean_raws.push_back(col.values[row].raw);
  }
  const DistanceIndex distance(clean_raws);

  const MaskMode mode = plan.semantic == SemanticMode::reuse_only ? MaskMode::reuse_only : MaskMode::suggest;
  const auto fallback = frequent_mask_fills(masked);
  ConcretizerOptions co;
  co.alpha = config.alpha;
  co.learned = config.concretization == ConcretizationMode::learned;
  const RankWeights weights = config.effective_weights();

  std::map<std::size_t, std::unique_ptr<PatternConcretizer>> concretizers;
  auto concretizer_for = [&](std::size_t pi) -> PatternConcretizer& {
    auto& slot = concretizers[pi];
    if (!slot) {
      const Pattern& p = set.all[pi];
      std::vector<TrainingRow> training;
      for (std::size_t row : plan.profile_rows) {
        if (error_rows.count(row)) continue;
        const std::size_t i = index.at(row);
        if (!matches(p, symbols[i])) continue;
        TrainingRow tr;
        tr.row = row;
        tr.value = symbols[i];
        for (const auto& e : masked.mask_table[i]) {
          tr.mask_texts.push_back(mode == MaskMode::suggest ? e.suggested : e.original);
        }
        training.push_back(std::move(tr));
      }
      slot = std::make_unique<PatternConcretizer>(p, features, training, ci, co);
    }
    return *slot;
  };

  std::set<std::pair<std::string, std::string>> recorded;
  for (const auto& d : r.detections) {
    const std::size_t i = index.at(d.row);
    const SymbolString& value = symbols[i];
    ValueRepair vr;
    vr.row = d.row;
    vr.original = d.raw;
    vr.masked = d.masked;
    std::vector<RepairCandidate> candidates;
    for (std::size_t pi : set.significant) {
      const Pattern& p = set.all[pi];
      const auto search = search_programs(p, value, config.max_programs);
      if (search.programs.empty()) {
        add_unique(vr.dropped, "no-program " + p.id);
        continue;
      }
      for (const auto& program : search.programs) {
        std::string reason;
        auto concrete = concretizer_for(pi).concretize(program, d.row, value, &reason);
        if (concrete.empty()) {
          add_unique(vr.dropped, reason + " (" + p.id + ")");
          continue;
        }
        const std::string abstract_text = to_shorthand(program, &r.alphabet);
        for (auto& cp : concrete) {
          if (!matches(p, strfix::apply(cp.program, value))) {
            add_unique(vr.dropped, "unsound-concretization (" + p.id + ")");
            continue;
          }
          const auto traced = apply_traced(cp.program, value);
          const auto resolved = concretize_masks(traced, value, masked.mask_table[i], mode, fallback);
          if (!resolved.text) {
            add_unique(vr.dropped, resolved.reason + " (" + p.id + ")");
            continue;
          }
          if (*resolved.text == d.raw) continue;
          RepairCandidate c;
          c.row = d.row;
          c.column = col.name;
          c.original = d.raw;
          c.repaired = *resolved.text;
          c.pattern_id = p.id;
          c.pattern = to_text(p, &r.alphabet);
          c.abstract_program = abstract_text;
          c.program = to_shorthand(cp.program, &r.alphabet);
          c.decided_by_tree = std::move(cp.decided_by_tree);
          c.features.edit_distance = levenshtein(c.original, c.repaired);
          c.features.alnum_edits = program.alnum_edits;
          c.features.min_distance_to_column = distance.nearest(c.repaired);
          c.features.pattern_coverage = p.coverage;
          candidates.push_back(std::move(c));
        }
      }
    }
    auto ranked = rank(std::move(candidates), weights);
    if (ranked.size() > config.top_n) ranked.resize(config.top_n);
    for (const auto& c : ranked) {
      const auto pi = static_cast<std::size_t>(
          std::find_if(set.all.begin(), set.all.end(), [&](const Pattern& p) { return p.id == c.pattern_id; }) -
          set.all.begin());
      for (const auto& [slot, by_tree] : c.decided_by_tree) {
        if (!by_tree || !recorded.insert({c.pattern_id, slot}).second) continue;
        const auto& tree = concretizer_for(pi).tree_for(slot);
        if (!tree) continue;
        ConstraintRecord rec{c.pattern_id, slot, *tree, {}};
        for (const auto& n : tree->nodes) {
          if (n.feature >= 0) rec.predicates[n.feature] = features.predicates()[static_cast<std::size_t>(n.feature)].describe();
        }
        r.constraints.push_back(std::move(rec));
      }
    }
    vr.candidates = std::move(ranked);
    r.repairs.push_back(std::move(vr));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

std::vector<ColumnResult> run_table(const Table& table, const RunConfig& config, SemanticOracle* oracle, bool repair) {
  config.validate();
  const auto columns = select_string_columns(table, config.string_threshold);
  const FeatureSet features = repair ? FeatureSet::build(table) : FeatureSet{};
  std::vector<ColumnResult> results(columns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t k = next++;
      if (k >= columns.size()) return;
      ColumnPlan plan;
      plan.profile_rows = usable_rows(table.column(columns[k]), config.flag_empty);
      plan.check_rows = plan.profile_rows;
      plan.semantic = config.semantic;
      results[k] = run_column(table, columns[k], plan, config, oracle, features, repair);
    }
  };
  const std::size_t threads = std::min(config.jobs, std::max<std::size_t>(1, columns.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

Table apply_repairs(const Table& table, const std::vector<ColumnResult>& results) {
  Table out = table;
  for (const auto& r : results) {
    for (const auto& v : r.repairs) {
      if (v.candidates.empty()) continue;
      out.set_cell(r.column_index, v.row, CellValue::from_text(v.candidates.front().repaired));
    }
  }
  return out;
}

}  // namespace strfix
