#include "strfix/corruptor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace strfix {

std::string_view to_string(NoiseOp op) {
  switch (op) {
    case NoiseOp::char_edit: return "char_edit";
    case NoiseOp::delimiter_edit: return "delimiter_edit";
    case NoiseOp::digit_swap: return "digit_swap";
    case NoiseOp::shuffle: return "shuffle";
    case NoiseOp::capitalization: return "capitalization";
    case NoiseOp::decimal_comma_swap: return "decimal_comma_swap";
    case NoiseOp::visual_typo: return "visual_typo";
  }
  return "?";
}

std::optional<NoiseOp> parse_noise_op(std::string_view name) {
  for (NoiseOp op : kAllNoiseOps) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

void NoiseSpec::validate() const {
  if (!(cell_probability >= 0.0 && cell_probability <= 1.0)) {
    throw std::invalid_argument("cell probability must be in [0, 1]");
  }
  double total = 0.0;
  for (double w : op_count_weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("operation count weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("operation count weights must not all be zero");
  if (enabled_ops.empty()) throw std::invalid_argument("no noise operation enabled");
}

namespace {

constexpr std::u32string_view kAlnum = U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::u32string_view kDelimiters = U"-_./:,";

std::size_t uniform(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool is_delimiter(Symbol c) { return !is_alnum(c) && c != U' '; }

Symbol visual_typo_of(Symbol c) {
  switch (c) {
    case U'o': return U'0';
    case U'l': return U'1';
    case U'e': return U'3';
    case U'a': return U'4';
    case U't': return U'7';
    case U's': return U'5';
    default: return 0;
  }
}

template <typename Pred>
std::vector<std::size_t> positions(const SymbolString& s, Pred pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (pred(i)) out.push_back(i);
  }
  return out;
}

Symbol pick_other(std::u32string_view pool, Symbol avoid, Rng& rng) {
  while (true) {
    const Symbol c = pool[uniform(rng, pool.size())];
    if (c != avoid) return c;
  }
}

std::optional<SymbolString> noise(NoiseOp op, SymbolString s, Rng& rng) {
  switch (op) {
    case NoiseOp::char_edit: {
      const std::size_t kind = s.empty() ? 0 : uniform(rng, 3);
      if (kind == 0) {
        s.insert(s.begin() + static_cast<std::ptrdiff_t>(uniform(rng, s.size() + 1)), kAlnum[uniform(rng, kAlnum.size())]);
      } else if (kind == 1) {
        s.erase(uniform(rng, s.size()), 1);
      } else {
        const std::size_t at = uniform(rng, s.size());
        s[at] = pick_other(kAlnum, s[at], rng);
      }
      return s;
    }
    case NoiseOp::delimiter_edit: {
      const auto delims = positions(s, [&](std::size_t i) { return is_delimiter(s[i]); });
      const std::size_t kind = delims.empty() ? 0 : uniform(rng, 3);
      if (kind == 0) {
        s.insert(s.begin() + static_cast<std::ptrdiff_t>(uniform(rng, s.size() + 1)),
                 kDelimiters[uniform(rng, kDelimiters.size())]);
      } else if (kind == 1) {
        s.erase(delims[uniform(rng, delims.size())], 1);
      } else {
        const std::size_t at = delims[uniform(rng, delims.size())];
        s[at] = pick_other(kDelimiters, s[at], rng);
      }
      return s;
    }
    case NoiseOp::digit_swap: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (is_digit(s[i]) && is_digit(s[j]) && s[i] != s[j]) pairs.emplace_back(i, j);
        }
      }
      if (pairs.empty()) return std::nullopt;
      const auto [i, j] = pairs[uniform(rng, pairs.size())];
      std::swap(s[i], s[j]);
      return s;
    }
    case NoiseOp::shuffle: {
      if (s.size() < 2) return std::nullopt;
      for (int attempt = 0; attempt < 10; ++attempt) {
        const std::size_t len = 2 + uniform(rng, std::min<std::size_t>(4, s.size()) - 1);
        const std::size_t start = uniform(rng, s.size() - len + 1);
        SymbolString t = s;
        std::shuffle(t.begin() + static_cast<std::ptrdiff_t>(start),
                     t.begin() + static_cast<std::ptrdiff_t>(start + len), rng);
        if (t != s) return t;
      }
      return std::nullopt;
    }
    case NoiseOp::capitalization: {
      const auto letters = positions(s, [&](std::size_t i) { return is_letter(s[i]); });
      if (letters.empty()) return std::nullopt;
      const std::size_t at = letters[uniform(rng, letters.size())];
      s[at] = is_lower(s[at]) ? s[at] - 32 : s[at] + 32;
      return s;
    }
    case NoiseOp::decimal_comma_swap: {
      const auto seps = positions(s, [&](std::size_t i) {
        return (s[i] == U'.' || s[i] == U',') && i > 0 && i + 1 < s.size() && is_digit(s[i - 1]) && is_digit(s[i + 1]);
      });
      if (seps.empty()) return std::nullopt;
      const std::size_t at = seps[uniform(rng, seps.size())];
      s[at] = s[at] == U'.' ? U',' : U'.';
      return s;
    }
    case NoiseOp::visual_typo: {
      const auto spots = positions(s, [&](std::size_t i) { return visual_typo_of(s[i]) != 0; });
      if (spots.empty()) return std::nullopt;
      const std::size_t at = spots[uniform(rng, spots.size())];
      s[at] = visual_typo_of(s[at]);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> apply_noise_op(NoiseOp op, std::string_view value, Rng& rng) {
  auto out = noise(op, decode_utf8(value), rng);
  if (!out) return std::nullopt;
  return encode_utf8(*out);
}

std::pair<Table, CorruptionLog> corrupt(const Table& table, const NoiseSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::bernoulli_distribution pick_cell(spec.cell_probability);
  std::discrete_distribution<int> pick_count(spec.op_count_weights.begin(), spec.op_count_weights.end());
  Table out = table;
  CorruptionLog log;
  for (std::size_t ci = 0; ci < table.column_count(); ++ci) {
    const auto& col = table.column(ci);
    for (std::size_t r = 0; r < col.values.size(); ++r) {
      const auto& cell = col.values[r];
      if (cell.kind != CellKind::text || cell.raw.empty()) continue;
      ++log.eligible_cells;
      if (!pick_cell(rng)) continue;
      const int count = pick_count(rng) + 1;
      log.drawn_counts.push_back(count);
      const SymbolString original = decode_utf8(cell.raw);
      for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<NoiseOp> pool = spec.enabled_ops;
        std::shuffle(pool.begin(), pool.end(), rng);
        SymbolString current = original;
        std::vector<std::string> applied;
        for (NoiseOp op : pool) {
          if (static_cast<int>(applied.size()) == count) break;
          auto next = noise(op, current, rng);
          if (!next) continue;
          current = std::move(*next);
          applied.emplace_back(to_string(op));
        }
        if (current == original) continue;
        CorruptionEntry e{r, col.name, cell.raw, encode_utf8(current), std::move(applied)};
        out.set_cell(ci, r, CellValue::from_text(e.corrupted));
        log.entries.push_back(std::move(e));
        break;
      }
    }
  }
  return {std::move(out), std::move(log)};
}

Table restore(const Table& corrupted, const CorruptionLog& log) {
  Table out = corrupted;
  for (const auto& e : log.entries) {
    const auto ci = out.column_index(e.column);
    if (!ci) throw std::invalid_argument("log references missing column '" + e.column + "'");
    out.set_cell(*ci, e.row, CellValue::from_text(e.original));
  }
  return out;
}

nlohmann::json CorruptionLog::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const auto& e : entries) {
    entries_json.push_back(
        {{"row", e.row}, {"column", e.column}, {"original", e.original}, {"corrupted", e.corrupted}, {"ops", e.ops}});
  }
  return {{"eligible_cells", eligible_cells}, {"drawn_counts", drawn_counts}, {"entries", entries_json}};
}

CorruptionLog CorruptionLog::from_json(const nlohmann::json& doc) {
  CorruptionLog log;
  log.eligible_cells = doc.value("eligible_cells", std::size_t{0});
  log.drawn_counts = doc.value("drawn_counts", std::vector<int>{});
  for (const auto& e : doc.at("entries")) {
    log.entries.push_back({e.at("row").get<std::size_t>(), e.at("column").get<std::string>(),
                           e.at("original").get<std::string>(), e.at("corrupted").get<std::string>(),
                           e.value("ops", std::vector<std::string>{})});
  }
  return log;
}

RecallScore score_recall(const CorruptionLog& log, std::span<const RepairCandidate> repairs) {
  std::map<std::pair<std::string, std::size_t>, std::string> suggested;
  for (const auto& r : repairs) suggested.emplace(std::pair{r.column, r.row}, r.repaired);
  RecallScore s;
  s.corrupted = log.entries.size();
  s.repairs = suggested.size();
  for (const auto& e : log.entries) {
    auto it = suggested.find({e.column, e.row});
    if (it != suggested.end() && it->second == e.original) ++s.reverted;
  }
  if (s.corrupted) s.recall = static_cast<double>(s.reverted) / static_cast<double>(s.corrupted);
  if (s.repairs) s.precision_lower_bound = static_cast<double>(s.reverted) / static_cast<double>(s.repairs);
  if (s.recall + s.precision_lower_bound > 0) {
    s.f1 = 2 * s.recall * s.precision_lower_bound / (s.recall + s.precision_lower_bound);
  }
  return s;
}

}  // namespace strfix
