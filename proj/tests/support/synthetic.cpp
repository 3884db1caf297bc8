#include "synthetic.hpp"

#include <array>
#include <cstdio>
#include <random>

namespace strfix::synthetic {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename T, std::size_t N>
const T& pick(Rng& rng, const std::array<T, N>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(N) - 1))];
}

std::string digits(Rng& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('0' + uniform(rng, 0, 9));
  return s;
}

std::string padded(int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*d", width, value);
  return buf;
}

constexpr std::array<const char*, 6> kPrefixes = {"INV", "ORD", "CUST", "EMP", "PRJ", "SKU"};
constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<const char*, 8> kCountries = {"US", "UK", "DE", "FR", "BR", "JP", "AU", "MX"};

struct Category {
  const char* name;
  const char* code;
};

constexpr std::array<std::array<Category, 3>, 3> kCategories = {{
    {{{"Junior", "JUN"}, {"Senior", "SEN"}, {"Veteran", "VET"}}},
    {{{"Hardware", "HW"}, {"Software", "SW"}, {"Services", "SV"}}},
    {{{"North", "N"}, {"South", "S"}, {"Central", "C"}}},
}};

struct RowContext {
  Rng& rng;
  const Category& category;
  std::size_t row;
  std::string prefix;
  char delim;
};

std::string make_value(const std::string& kind, RowContext& c) {
  Rng& rng = c.rng;
  if (kind == "prefixed_id") return c.prefix + c.delim + digits(rng, 4);
  if (kind == "iso_date") {
    return std::to_string(uniform(rng, 2015, 2024)) + "-" + padded(uniform(rng, 1, 12), 2) + "-" +
           padded(uniform(rng, 1, 28), 2);
  }
  if (kind == "slash_date") {
    return padded(uniform(rng, 1, 12), 2) + "/" + padded(uniform(rng, 1, 28), 2) + "/" +
           std::to_string(uniform(rng, 2015, 2024));
  }
  if (kind == "month_date") {
    return padded(uniform(rng, 1, 28), 2) + "-" + pick(rng, kMonths) + "-" + std::to_string(uniform(rng, 2015, 2024));
  }
  if (kind == "product_code") {
    std::string s;
    s += static_cast<char>('A' + uniform(rng, 0, 25));
    s += static_cast<char>('A' + uniform(rng, 0, 25));
    return s + "-" + digits(rng, 3) + "-" + c.category.code;
  }
  if (kind == "phone") return "(" + digits(rng, 3) + ") " + digits(rng, 3) + "-" + digits(rng, 4);
  if (kind == "clock_time") return padded(uniform(rng, 0, 23), 2) + ":" + padded(uniform(rng, 0, 59), 2);
  if (kind == "version") {
    return "v" + std::to_string(uniform(rng, 1, 9)) + "." + std::to_string(uniform(rng, 0, 20)) + "." +
           std::to_string(uniform(rng, 0, 9));
  }
  if (kind == "country_id") return std::string(pick(rng, kCountries)) + "-" + digits(rng, 3) + "-" + c.category.code;
  if (kind == "quarter") return "Q" + std::to_string(uniform(rng, 1, 4)) + "-" + std::to_string(uniform(rng, 2015, 2024));
  if (kind == "room") return std::string(c.category.code) + "-" + std::to_string(uniform(rng, 1, 9)) + padded(uniform(rng, 0, 30), 2);
  return c.prefix + "_" + padded(static_cast<int>(c.row) + 1, 5);
}

}  // namespace

const std::vector<std::string>& template_names() {
  static const std::vector<std::string> kNames = {"prefixed_id", "iso_date",   "slash_date", "month_date",
                                                  "product_code", "phone",     "clock_time", "version",
                                                  "country_id",  "quarter",    "room",       "sequence"};
  return kNames;
}

GeneratedTable generate_table(std::size_t index, std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  const auto& names = template_names();
  const std::string kind = names[index % names.size()];
  const auto& categories = kCategories[static_cast<std::size_t>(uniform(rng, 0, 2))];
  const std::string prefix = pick(rng, kPrefixes);
  constexpr std::array<char, 3> kDelims = {'-', '_', '#'};
  const char delim = pick(rng, kDelims);

  Column values{kind, {}, ColumnKind::na};
  Column labels{"Category", {}, ColumnKind::na};
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& cat = categories[static_cast<std::size_t>(uniform(rng, 0, 2))];
    RowContext ctx{rng, cat, r, prefix, delim};
    values.values.push_back(CellValue::from_text(make_value(kind, ctx)));
    labels.values.push_back(CellValue::from_text(cat.name));
  }
  values.infer_kind();
  labels.infer_kind();
  Table t("synthetic_" + std::to_string(index));
  t.add_column(std::move(labels));
  t.add_column(std::move(values));
  return {kind, std::move(t)};
}

std::vector<CorpusCase> generate_corpus(std::size_t tables, std::size_t rows, double rate, std::uint64_t seed) {
  std::vector<CorpusCase> out;
  for (std::size_t i = 0; i < tables; ++i) {
    auto clean = generate_table(i, rows, seed * 1000003u + i);
    NoiseSpec spec;
    spec.cell_probability = rate;
    spec.seed = seed * 7919u + i;
    auto [dirty, log] = corrupt(clean.table, spec);
    out.push_back({std::move(clean), std::move(dirty), std::move(log)});
  }
  return out;
}

Table random_column(std::uint64_t seed, std::size_t rows) {
  Rng rng(seed);
  const auto& names = template_names();
  const std::string main = names[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(names.size()) - 1))];
  const std::string second = names[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(names.size()) - 1))];
  const auto& categories = kCategories[0];
  Column col{"value", {}, ColumnKind::na};
  const int second_share = uniform(rng, 0, 40);
  const int outlier_share = uniform(rng, 0, 10);
  for (std::size_t r = 0; r < rows; ++r) {
    RowContext ctx{rng, categories[static_cast<std::size_t>(uniform(rng, 0, 2))], r, "ID", '-'};
    const int roll = uniform(rng, 0, 99);
    std::string v = make_value(roll < second_share ? second : main, ctx);
    if (roll >= 100 - outlier_share && !v.empty()) {
      v.erase(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1)), 1);
      v += "?";
    }
    col.values.push_back(CellValue::from_text(v));
  }
  col.infer_kind();
  Table t("random");
  t.add_column(std::move(col));
  return t;
}

}  // namespace strfix::synthetic
