#pragma once

#include <span>
#include <string>
#include <vector>

#include "strfix/formula.hpp"
#include "strfix/pipeline.hpp"

namespace strfix {

struct ExecutionPartition {
  std::vector<std::size_t> successes;
  std::vector<std::size_t> failures;
};

std::vector<FormulaValue> evaluate_rows(const FormulaProgram& program, const Table& table);

/// A row fails when its output is exceptional.
ExecutionPartition partition(const FormulaProgram& program, const Table& table);

struct Verification {
  bool formula_success = false;
  double cell_success_rate = 0.0;
  std::size_t failures = 0;
};

Verification verify(const FormulaProgram& program, const Table& table);

struct AppliedRepair {
  std::string column;
  std::size_t row = 0;
  std::string value;
};

/// Applies `repairs` to a copy of `table` and re-runs the program.
Verification verify_repairs(const FormulaProgram& program, const Table& table, std::span<const AppliedRepair> repairs);

struct ExecRepairResult {
  ExecutionPartition partition;
  std::vector<ColumnResult> columns;
  /// Top-1 suggestions restricted to inputs of failing rows.
  std::vector<AppliedRepair> applied;
  bool guided = true;
  std::vector<std::string> warnings;
  Verification before;
  Verification after;
};

/// Learns patterns from the input values of succeeding rows only, treats
/// them all as significant, and repairs failing-row inputs that match none.
/// Without any succeeding row it falls back to unsupervised repair.
ExecRepairResult execution_guided_repair(const FormulaProgram& program, const Table& table, const RunConfig& config,
                                         SemanticOracle* oracle);

/// Unsupervised repair of the program's input columns, applied only to
/// inputs of failing rows.
ExecRepairResult unsupervised_exec_repair(const FormulaProgram& program, const Table& table, const RunConfig& config,
                                          SemanticOracle* oracle);

}  // namespace strfix
