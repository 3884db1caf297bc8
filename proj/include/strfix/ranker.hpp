#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strfix/symbols.hpp"

namespace strfix {

struct RankFeatures {
  int edit_distance = 0;
  int alnum_edits = 0;
  int min_distance_to_column = 0;
  double pattern_coverage = 0.0;
};

struct RankWeights {
  std::array<double, 4> w{-1.0, -1.0, -0.2, 5.0};

  static RankWeights edit_distance_only() { return {{-1.0, 0.0, 0.0, 0.0}}; }
  /// "w1,w2,w3,w4"; throws std::invalid_argument otherwise.
  static RankWeights parse(std::string_view text);
};

struct RepairCandidate {
  std::size_t row = 0;
  std::string column;
  std::string original;
  std::string repaired;
  std::string pattern_id;
  std::string pattern;
  std::string abstract_program;
  std::string program;
  /// Slot key -> whether a learned constraint chose its value.
  std::map<std::string, bool> decided_by_tree;
  RankFeatures features;
  double score = 0.0;
};

/// Levenshtein distance over code points.
int levenshtein(SymbolView a, SymbolView b);
int levenshtein(std::string_view a, std::string_view b);

/// Nearest-neighbour edit distance against a fixed set of values.
class DistanceIndex {
 public:
  explicit DistanceIndex(std::span<const std::string> values);
  /// Smallest distance to any indexed value; the length of `value` when the
  /// index is empty.
  int nearest(std::string_view value) const;

 private:
  std::vector<SymbolString> values_;
};

double score(const RepairCandidate& candidate, const RankWeights& weights);

/// Deduplicates by repaired value (keeping the best-scoring copy), scores,
/// and sorts by score descending, then edit distance, then repaired value.
std::vector<RepairCandidate> rank(std::vector<RepairCandidate> candidates, const RankWeights& weights);

}  // namespace strfix
