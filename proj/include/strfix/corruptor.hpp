#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "strfix/ranker.hpp"
#include "strfix/table.hpp"

namespace strfix {

enum class NoiseOp {
  char_edit,
  delimiter_edit,
  digit_swap,
  shuffle,
  capitalization,
  decimal_comma_swap,
  visual_typo,
};

inline constexpr std::array<NoiseOp, 7> kAllNoiseOps = {
    NoiseOp::char_edit,      NoiseOp::delimiter_edit,     NoiseOp::digit_swap, NoiseOp::shuffle,
    NoiseOp::capitalization, NoiseOp::decimal_comma_swap, NoiseOp::visual_typo,
};

std::string_view to_string(NoiseOp op);
std::optional<NoiseOp> parse_noise_op(std::string_view name);

struct NoiseSpec {
  double cell_probability = 0.20;
  /// Weights of applying 1, 2, 3 or 4 operations to a corrupted cell.
  std::array<double, 4> op_count_weights{0.25, 0.25, 0.25, 0.25};
  std::uint64_t seed = 0;
  std::vector<NoiseOp> enabled_ops{kAllNoiseOps.begin(), kAllNoiseOps.end()};

  /// Throws std::invalid_argument.
  void validate() const;
};

struct CorruptionEntry {
  std::size_t row = 0;
  std::string column;
  std::string original;
  std::string corrupted;
  std::vector<std::string> ops;
};

struct CorruptionLog {
  std::vector<CorruptionEntry> entries;
  /// Number of operations drawn for each corrupted cell, before any turned
  /// out inapplicable.
  std::vector<int> drawn_counts;
  std::size_t eligible_cells = 0;

  nlohmann::json to_json() const;
  static CorruptionLog from_json(const nlohmann::json& doc);
};

using Rng = std::mt19937_64;

/// Applies one operation; nullopt when it cannot change `value`.
std::optional<std::string> apply_noise_op(NoiseOp op, std::string_view value, Rng& rng);

/// Corrupts text cells independently with spec.cell_probability. Each
/// corrupted cell receives 1-4 distinct operations; the result always
/// differs from the original.
std::pair<Table, CorruptionLog> corrupt(const Table& table, const NoiseSpec& spec);

/// Writes the logged originals back.
Table restore(const Table& corrupted, const CorruptionLog& log);

struct RecallScore {
  double recall = 0.0;
  double precision_lower_bound = 0.0;
  double f1 = 0.0;
  std::size_t corrupted = 0;
  std::size_t reverted = 0;
  std::size_t repairs = 0;
};

/// Recall over logged cells; precision treats any repair of an unlogged cell
/// as wrong, so it is a lower bound.
RecallScore score_recall(const CorruptionLog& log, std::span<const RepairCandidate> repairs);

}  // namespace strfix
