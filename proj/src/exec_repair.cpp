#include "strfix/exec_repair.hpp"

#include <algorithm>
#include <set>

namespace strfix {

std::vector<FormulaValue> evaluate_rows(const FormulaProgram& program, const Table& table) {
  program.validate(table);
  std::vector<FormulaValue> out;
  out.reserve(table.row_count());
  for (std::size_t r = 0; r < table.row_count(); ++r) out.push_back(program.evaluate(table, r));
  return out;
}

ExecutionPartition partition(const FormulaProgram& program, const Table& table) {
  ExecutionPartition p;
  const auto outputs = evaluate_rows(program, table);
  for (std::size_t r = 0; r < outputs.size(); ++r) {
    const bool failed = outputs[r].is_error() || is_exceptional_value(outputs[r].to_cell().raw);
    (failed ? p.failures : p.successes).push_back(r);
  }
  return p;
}

Verification verify(const FormulaProgram& program, const Table& table) {
  const auto p = partition(program, table);
  Verification v;
  v.failures = p.failures.size();
  v.formula_success = p.failures.empty();
  v.cell_success_rate =
      table.row_count() ? static_cast<double>(p.successes.size()) / static_cast<double>(table.row_count()) : 1.0;
  return v;
}

Verification verify_repairs(const FormulaProgram& program, const Table& table, std::span<const AppliedRepair> repairs) {
  Table copy = table;
  for (const auto& r : repairs) {
    const auto ci = copy.column_index(r.column);
    if (!ci) throw FormulaError("repair references missing column '" + r.column + "'");
    copy.set_cell(*ci, r.row, CellValue::from_text(r.value));
  }
  return verify(program, copy);
}

namespace {

std::vector<std::size_t> input_column_indices(const FormulaProgram& program, const Table& table) {
  std::vector<std::size_t> out;
  for (const auto& name : program.input_columns()) out.push_back(*table.column_index(name));
  return out;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void collect_applied(ExecRepairResult& result, const std::vector<std::size_t>& failures) {
  const std::set<std::size_t> failing(failures.begin(), failures.end());
  for (const auto& c : result.columns) {
    for (const auto& v : c.repairs) {
      if (v.candidates.empty() || !failing.count(v.row)) continue;
      result.applied.push_back({c.column, v.row, v.candidates.front().repaired});
    }
  }
}

}  // namespace

ExecRepairResult unsupervised_exec_repair(const FormulaProgram& program, const Table& table, const RunConfig& config,
                                          SemanticOracle* oracle) {
  config.validate();
  ExecRepairResult result;
  result.guided = false;
  result.partition = partition(program, table);
  result.before = verify(program, table);
  const FeatureSet features = FeatureSet::build(table);
  for (std::size_t ci : input_column_indices(program, table)) {
    ColumnPlan plan;
    plan.profile_rows = usable_rows(table.column(ci), config.flag_empty);
    plan.check_rows = plan.profile_rows;
    plan.semantic = config.semantic;
    result.columns.push_back(run_column(table, ci, plan, config, oracle, features, true));
  }
  collect_applied(result, result.partition.failures);
  result.after = verify_repairs(program, table, result.applied);
  return result;
}

ExecRepairResult execution_guided_repair(const FormulaProgram& program, const Table& table, const RunConfig& config,
                                         SemanticOracle* oracle) {
  config.validate();
  ExecRepairResult result;
  result.partition = partition(program, table);
  result.before = verify(program, table);
  if (result.partition.failures.empty()) {
    result.after = result.before;
    return result;
  }
  if (result.partition.successes.empty()) {
    auto fallback = unsupervised_exec_repair(program, table, config, oracle);
    fallback.warnings.insert(fallback.warnings.begin(),
                             "no row executes successfully; falling back to unsupervised repair");
    return fallback;
  }
  const FeatureSet features = FeatureSet::build(table);
  for (std::size_t ci : input_column_indices(program, table)) {
    const auto usable = usable_rows(table.column(ci), config.flag_empty);
    ColumnPlan plan;
    plan.profile_rows = intersect(usable, result.partition.successes);
    plan.check_rows = intersect(usable, result.partition.failures);
    plan.all_significant = true;
    plan.semantic = config.guided_semantic ? config.semantic : SemanticMode::no_abstraction;
    result.columns.push_back(run_column(table, ci, plan, config, oracle, features, true));
  }
  collect_applied(result, result.partition.failures);
  result.after = verify_repairs(program, table, result.applied);
  return result;
}

}  // namespace strfix
