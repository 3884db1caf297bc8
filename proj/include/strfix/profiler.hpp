#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "strfix/pattern.hpp"

namespace strfix {

struct ProfilerOptions {
  std::size_t k = 6;
  /// Weight of the generality term against pattern size.
  double lambda = 1.0;
  std::size_t max_disjunction = 5;
};

/// Learns at most `options.k` full-string patterns whose union accepts every
/// value. Patterns come back ordered by coverage (descending), then text; ids
/// are "p0", "p1", ... in that order. Coverage is the fraction of `values`
/// each pattern accepts.
std::vector<Pattern> learn_patterns(std::span<const SymbolString> values,
                                    const ProfilerOptions& options = {});

struct PatternSet {
  std::vector<Pattern> all;
  /// Indices into `all`.
  std::vector<std::size_t> significant;
  double delta = 0.2;

  std::vector<const Pattern*> significant_patterns() const;
  bool any_significant_match(SymbolView value) const;
};

/// Keeps every pattern with coverage >= delta. Throws std::invalid_argument
/// unless delta is in (0, 1].
PatternSet select_significant(std::vector<Pattern> patterns, double delta);

/// Marks every pattern significant regardless of coverage.
PatternSet all_significant(std::vector<Pattern> patterns);

double compute_coverage(const Pattern& pattern, std::span<const SymbolString> values);

}  // namespace strfix
