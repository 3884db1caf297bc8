#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles/edit_oracle.hpp"
#include "strfix/detector.hpp"
#include "strfix/edit_engine.hpp"
#include "strfix/pipeline.hpp"
#include "support/synthetic.hpp"

using namespace strfix;

TEST_CASE("min edit cost equals exhaustive search over raw edits") {
  std::mt19937_64 rng(20240601);
  int compared = 0;
  for (int n = 0; n < 300; ++n) {
    const auto model = oracle::random_model(rng);
    const std::string value = oracle::random_value(rng, 6);
    const PatternNode root = parse_pattern(model.syntax());
    const auto dag = unroll(root, value.size());
    const auto dp = fill_dp(dag, decode_utf8(value));
    const auto cost = best_cost(dag, dp);
    REQUIRE(cost.has_value());
    const std::size_t copies = model.copies_for(value.size());
    INFO(model.syntax(), " on ", value);
    CHECK(oracle::enumerated_distance(model, value, copies, value.size() + static_cast<std::size_t>(*cost)) == *cost);
    if (*cost <= 2) CHECK(oracle::bfs_distance(model, value, copies, *cost) == *cost);
    ++compared;
  }
  CHECK(compared == 300);
}

TEST_CASE("every cost cell satisfies the recurrence") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const auto model = oracle::random_model(rng);
    const std::string value = oracle::random_value(rng, 8);
    const auto symbols = decode_utf8(value);
    const auto dag = unroll(parse_pattern(model.syntax()), symbols.size());
    const auto audit = oracle::audit_recurrence(dag, symbols, fill_dp(dag, symbols));
    INFO(model.syntax(), " on ", value, ": ", audit.detail);
    CHECK(audit.ok);
  }
}

TEST_CASE("applying a concrete minimal program lands in the pattern language") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const auto model = oracle::random_model(rng);
    const std::string value = oracle::random_value(rng, 6);
    Pattern p;
    p.root = parse_pattern(model.syntax());
    const auto search = search_programs(p, decode_utf8(value));
    REQUIRE_FALSE(search.programs.empty());
    for (const auto& program : search.programs) {
      // Pick the first member of every abstract emit.
      EditProgram concrete = program;
      for (auto& a : concrete.actions) {
        if (a.emit == EmitKind::char_class) {
          a.emit = EmitKind::symbol;
          a.symbol = class_members(a.char_class).front();
        } else if (a.emit == EmitKind::symbol_set) {
          a.emit = EmitKind::symbol;
          a.symbol = a.set.front();
        } else if (a.emit == EmitKind::alternatives) {
          a.emit = EmitKind::text;
          a.text = a.alternatives.front();
        }
      }
      const auto out = strfix::apply(concrete, decode_utf8(value));
      INFO(model.syntax(), " on ", value, " -> ", encode_utf8(out));
      CHECK(matches(p, out));
      CHECK(program.cost == search.programs.front().cost);
    }
  }
}

TEST_CASE("DP work stays within the quadratic bound") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 100; ++n) {
    const auto model = oracle::random_model(rng);
    const std::string value = oracle::random_value(rng, 12);
    const auto dag = unroll(parse_pattern(model.syntax()), value.size());
    DpStats stats;
    const auto dp = fill_dp(dag, decode_utf8(value), &stats);
    const double m = static_cast<double>(dag.nodes.size());
    const double len = static_cast<double>(value.size() + 1);
    CHECK(static_cast<double>(stats.operations) <= 4.0 * m * m * len);
    CHECK(dp.cost.size() == dp.rows * dp.cols);
  }
}

namespace {

std::vector<std::size_t> detected_rows(const Table& t, double delta) {
  RunConfig config;
  config.delta = delta;
  config.semantic = SemanticMode::no_abstraction;
  config.oracle = "none";
  const auto results = run_table(t, config, nullptr, false);
  std::vector<std::size_t> rows;
  for (const auto& r : results) {
    for (const auto& d : r.detections) rows.push_back(d.row);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("raising delta never shrinks the error set until nothing is significant") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Table t = synthetic::random_column(seed, 120);
    std::vector<std::size_t> previous;
    bool emptied = false;
    for (int step = 1; step <= 9; ++step) {
      const auto rows = detected_rows(t, step / 10.0);
      if (rows.empty() && !previous.empty()) {
        emptied = true;
        continue;
      }
      if (emptied) {
        CHECK(rows.empty());
        continue;
      }
      INFO("seed ", seed, " delta ", step / 10.0);
      CHECK(std::includes(rows.begin(), rows.end(), previous.begin(), previous.end()));
      previous = rows;
    }
  }
}
