#pragma once

#include <span>
#include <string>
#include <vector>

#include "strfix/profiler.hpp"

namespace strfix {

/// One non-na cell of a column in its three forms.
struct ColumnValue {
  std::size_t row = 0;
  std::string raw;
  /// Rendered pattern-alphabet form, e.g. "{country}-123".
  std::string masked;
  SymbolString symbols;
};

struct Detection {
  std::size_t row = 0;
  std::string raw;
  std::string masked;
};

struct DetectionReport {
  std::string column;
  std::vector<Detection> errors;
  PatternSet pattern_set;
  std::size_t row_count = 0;
  /// errors / row_count.
  double fire_rate = 0.0;
};

/// Reports every value accepted by no significant pattern. With no
/// significant pattern nothing is reported.
DetectionReport detect(const std::string& column, std::span<const ColumnValue> values, const PatternSet& patterns,
                       std::size_t row_count);

}  // namespace strfix
