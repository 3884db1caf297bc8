#include "strfix/detector.hpp"

namespace strfix {

DetectionReport detect(const std::string& column, std::span<const ColumnValue> values, const PatternSet& patterns,
                       std::size_t row_count) {
  DetectionReport report;
  report.column = column;
  report.pattern_set = patterns;
  report.row_count = row_count;
  if (!patterns.significant.empty()) {
    for (const auto& v : values) {
      if (!patterns.any_significant_match(v.symbols)) report.errors.push_back({v.row, v.raw, v.masked});
    }
  }
  report.fire_rate = row_count ? static_cast<double>(report.errors.size()) / static_cast<double>(row_count) : 0.0;
  return report;
}

}  // namespace strfix
