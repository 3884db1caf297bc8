#include "strfix/ranker.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace strfix {

RankWeights RankWeights::parse(std::string_view text) {
  RankWeights out;
  std::size_t idx = 0;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const std::string part(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (idx >= 4) throw std::invalid_argument("weights need exactly 4 values");
    std::size_t used = 0;
    try {
      out.w[idx++] = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight '" + part + "'");
    }
    if (used != part.size() || !std::isfinite(out.w[idx - 1])) throw std::invalid_argument("bad weight '" + part + "'");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (idx != 4) throw std::invalid_argument("weights need exactly 4 values");
  return out;
}

namespace {

int bounded_levenshtein(SymbolView a, SymbolView b, int bound) {
  if (a.size() < b.size()) std::swap(a, b);
  const int diff = static_cast<int>(a.size() - b.size());
  if (diff >= bound) return bound;
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    int row_min = cur[0];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min >= bound) return bound;
    std::swap(prev, cur);
  }
  return std::min(prev[b.size()], bound);
}

}  // namespace

int levenshtein(SymbolView a, SymbolView b) {
  return bounded_levenshtein(a, b, static_cast<int>(a.size() + b.size() + 1));
}

int levenshtein(std::string_view a, std::string_view b) { return levenshtein(decode_utf8(a), decode_utf8(b)); }

DistanceIndex::DistanceIndex(std::span<const std::string> values) {
  std::set<std::string> distinct(values.begin(), values.end());
  for (const auto& v : distinct) values_.push_back(decode_utf8(v));
  std::stable_sort(values_.begin(), values_.end(),
                   [](const SymbolString& a, const SymbolString& b) { return a.size() < b.size(); });
}

int DistanceIndex::nearest(std::string_view value) const {
  const SymbolString v = decode_utf8(value);
  int best = std::numeric_limits<int>::max();
  if (values_.empty()) return static_cast<int>(v.size());
  for (const auto& c : values_) {
    const int gap = std::abs(static_cast<int>(c.size()) - static_cast<int>(v.size()));
    if (gap >= best) continue;
    best = std::min(best, bounded_levenshtein(v, c, best));
    if (best == 0) break;
  }
  return best;
}

double score(const RepairCandidate& c, const RankWeights& weights) {
  const auto& f = c.features;
  return weights.w[0] * f.edit_distance + weights.w[1] * f.alnum_edits + weights.w[2] * f.min_distance_to_column +
         weights.w[3] * f.pattern_coverage;
}

std::vector<RepairCandidate> rank(std::vector<RepairCandidate> candidates, const RankWeights& weights) {
  for (auto& c : candidates) c.score = score(c, weights);
  std::vector<RepairCandidate> unique;
  std::unordered_map<std::string, std::size_t> index;
  for (auto& c : candidates) {
    auto it = index.find(c.repaired);
    if (it == index.end()) {
      index.emplace(c.repaired, unique.size());
      unique.push_back(std::move(c));
    } else if (c.score > unique[it->second].score) {
      unique[it->second] = std::move(c);
    }
  }
  std::stable_sort(unique.begin(), unique.end(), [](const RepairCandidate& a, const RepairCandidate& b) {
    const double scale = std::max({1.0, std::abs(a.score), std::abs(b.score)});
    if (std::abs(a.score - b.score) > 1e-9 * scale) return a.score > b.score;
    if (a.features.edit_distance != b.features.edit_distance) return a.features.edit_distance < b.features.edit_distance;
    return a.repaired < b.repaired;
  });
  return unique;
}

}  // namespace strfix
