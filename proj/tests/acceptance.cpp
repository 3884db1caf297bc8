// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "oracles/edit_oracle.hpp"
#include "strfix/corruptor.hpp"
#include "strfix/edit_engine.hpp"
#include "strfix/exec_repair.hpp"
#include "strfix/pipeline.hpp"
#include "support/synthetic.hpp"

using namespace strfix;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Table fixture(const std::string& name) { return load_table_file(std::string(STRFIX_DATA_DIR "/fixtures/") + name + ".csv"); }

FormulaProgram fixture_formula(const std::string& name) {
  std::ifstream in(std::string(STRFIX_DATA_DIR "/fixtures/") + name + ".formula");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return FormulaProgram::parse(s);
}

DictionaryOracle bundled() { return DictionaryOracle::from_directory(STRFIX_DATA_DIR "/gazetteers"); }

const ColumnResult* by_name(const std::vector<ColumnResult>& results, const std::string& name) {
  for (const auto& r : results) {
    if (r.column == name) return &r;
  }
  return nullptr;
}

std::vector<std::string> detected(const ColumnResult* c) {
  std::vector<std::string> out;
  if (c) {
    for (const auto& d : c->detections) out.push_back(d.raw);
  }
  return out;
}

std::string top1(const ColumnResult* c, std::size_t row) {
  if (!c) return {};
  for (const auto& v : c->repairs) {
    if (v.row == row && !v.candidates.empty()) return v.candidates.front().repaired;
  }
  return {};
}

std::string applied(const ExecRepairResult& r, std::size_t row) {
  for (const auto& a : r.applied) {
    if (a.row == row) return a.value;
  }
  return {};
}

// Raw-edit BFS with std::regex as the membership test.
int regex_bfs(const std::string& value, const std::regex& language, const std::string& alphabet, int limit) {
  std::deque<std::pair<std::string, int>> queue{{value, 0}};
  std::unordered_set<std::string> seen{value};
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (std::regex_match(s, language)) return d;
    if (d == limit) continue;
    std::vector<std::string> next;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      for (char c : alphabet) next.push_back(s.substr(0, i) + c + s.substr(i));
      if (i == s.size()) break;
      next.push_back(s.substr(0, i) + s.substr(i + 1));
      for (char c : alphabet) {
        if (c == s[i]) continue;
        std::string t = s;
        t[i] = c;
        next.push_back(t);
      }
    }
    for (auto& t : next) {
      if (seen.insert(t).second) queue.emplace_back(std::move(t), d + 1);
    }
  }
  return -1;
}

void criterion_dp_equals_search() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1000);
  int cases = 0, agree = 0, bfs_checked = 0;
  std::string first_mismatch;
  for (; cases < 1000; ++cases) {
    const auto model = oracle::random_model(rng);
    const std::string value = oracle::random_value(rng, 6);
    const auto dag = unroll(parse_pattern(model.syntax()), value.size());
    const auto cost = best_cost(dag, fill_dp(dag, decode_utf8(value)));
    const std::size_t copies = model.copies_for(value.size());
    bool ok = cost.has_value() &&
              oracle::enumerated_distance(model, value, copies, value.size() + static_cast<std::size_t>(*cost)) == *cost;
    if (ok && *cost <= 2) {
      ok = oracle::bfs_distance(model, value, copies, *cost) == *cost;
      ++bfs_checked;
    }
    if (ok) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = model.syntax() + " on '" + value + "'";
    }
  }
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(agree) + "/" + std::to_string(cases) + " agree (" + std::to_string(bfs_checked) +
                       " also by raw-edit BFS) in " + fmt("%.2f s", secs);
  if (!first_mismatch.empty()) detail += "; first mismatch " + first_mismatch;
  report(1, "dp-equals-search", agree == cases && cases >= 1000 && secs < 60.0, detail);
}

void criterion_recurrence_audit() {
  std::mt19937_64 rng(2000);
  int ok = 0;
  std::string first;
  for (int n = 0; n < 100; ++n) {
    const auto model = oracle::random_model(rng);
    const auto value = decode_utf8(oracle::random_value(rng, 8));
    const auto dag = unroll(parse_pattern(model.syntax()), value.size());
    const auto audit = oracle::audit_recurrence(dag, value, fill_dp(dag, value));
    if (audit.ok) {
      ++ok;
    } else if (first.empty()) {
      first = model.syntax() + ": " + audit.detail;
    }
  }
  report(2, "recurrence-audit", ok == 100, std::to_string(ok) + "/100 instances" + (first.empty() ? "" : "; " + first));
}

void criterion_players() {
  auto oracle = bundled();
  RunConfig config;
  const auto results = run_table(fixture("players"), config, &oracle, true);
  const auto* ids = by_name(results, "Player ID");
  const auto errors = detected(ids);
  const std::string fix = top1(ids, 14);
  const bool ok = errors == std::vector<std::string>{"usa_837"} && fix == "US-837-PRO";
  std::string list;
  for (const auto& e : errors) list += (list.empty() ? "" : ",") + e;
  report(3, "player-ids", ok, "detected {" + list + "}, top-1 '" + fix + "'");
}

void criterion_folded_codes() {
  RunConfig config;
  config.delta = 0.25;
  config.oracle = "none";
  const auto results = run_table(fixture("folded_codes"), config, nullptr, true);
  const auto* code = by_name(results, "Code");
  const auto errors = detected(code);

  const auto root = parse_pattern("(A[0-9].)+");
  const auto dag = unroll(root, 4);
  const int depth = dag.depths.empty() ? 0 : dag.depths.front().second;
  const auto cost = best_cost(dag, fill_dp(dag, U"AAA3"));
  const std::regex language("(A[0-9]\\.)+");
  const int bfs = regex_bfs("AAA3", language, "A.03", 4);
  const std::string fix = top1(code, 4);
  const bool in_language = !fix.empty() && std::regex_match(fix, language);

  const bool ok = errors == std::vector<std::string>{"AAA3"} && depth == 2 && cost && *cost == bfs && in_language;
  report(4, "folded-codes", ok,
         "detected " + std::to_string(errors.size()) + " value(s)" + (errors.size() == 1 ? " '" + errors[0] + "'" : "") +
             ", unroll depth " + std::to_string(depth) + ", dp cost " + (cost ? std::to_string(*cost) : "none") +
             ", BFS cost " + std::to_string(bfs) + ", repair '" + fix + "' (delta 0.25)");
}

void criterion_dash_search() {
  RunConfig config;
  auto oracle = bundled();
  const auto r = execution_guided_repair(fixture_formula("dash_search"), fixture("dash_search"), config, &oracle);
  const bool ok = applied(r, 2) == "c-3" && applied(r, 3) == "c-4" && r.after.formula_success &&
                  r.after.cell_success_rate == 1.0;
  report(5, "dash-search-guided", ok,
         "row 2 -> '" + applied(r, 2) + "', row 3 -> '" + applied(r, 3) + "', cell success " +
             fmt("%.2f", r.after.cell_success_rate));
}

void criterion_codes_without_dash() {
  RunConfig config;
  auto oracle = bundled();
  const auto t = fixture("dashed_codes");
  const auto p = fixture_formula("dashed_codes");
  const auto plain = unsupervised_exec_repair(p, t, config, &oracle);
  const auto guided = execution_guided_repair(p, t, config, &oracle);
  const bool plain_silent = applied(plain, 6).empty() && applied(plain, 7).empty();
  const bool ok = plain_silent && applied(guided, 6) == "C-09" && applied(guided, 7) == "C-19" &&
                  guided.after.formula_success && !plain.after.formula_success;
  report(6, "guided-vs-unsupervised", ok,
         std::string("unsupervised ") + (plain_silent ? "proposes nothing" : "proposes repairs") +
             ", formula_success=" + (plain.after.formula_success ? "true" : "false") + "; guided '" +
             applied(guided, 6) + "', '" + applied(guided, 7) +
             "', formula_success=" + (guided.after.formula_success ? "true" : "false"));
}

void criterion_semantics() {
  auto oracle = bundled();
  const std::vector<std::string> values{"US-123", "u.k.-392"};
  const auto out = oracle.annotate(values, SemanticTypeList::defaults());
  RunConfig config;
  const auto results = run_table(fixture("colors"), config, &oracle, false);
  const auto* items = by_name(results, "Item");
  std::string masked;
  if (items && items->detections.size() == 1) masked = items->detections[0].masked;
  const bool ok = out[0] == "{country(US)}-123" && out[1] == "{country(UK)}-392" &&
                  detected(items) == std::vector<std::string>{"blue phone 3"} && masked == "{color} phone 3";
  report(7, "semantic-abstraction", ok,
         "'" + out[0] + "', '" + out[1] + "'; colors flags " + std::to_string(detected(items).size()) +
             " value(s), masked '" + masked + "'");
}

void criterion_corruptor() {
  std::string csv = "a,b\n";
  for (int i = 0; i < 25000; ++i) csv += "AB-" + std::to_string(100 + i % 900) + ".5x,name_" + std::to_string(i) + "\n";
  const Table t = parse_csv(csv);
  NoiseSpec spec;
  spec.seed = 8;
  const auto [dirty, log] = corrupt(t, spec);
  const double rate = static_cast<double>(log.entries.size()) / static_cast<double>(log.eligible_cells);
  std::array<double, 4> share{};
  for (int c : log.drawn_counts) share[static_cast<std::size_t>(c - 1)] += 1.0;
  double worst = 0.0;
  for (auto& s : share) {
    s /= static_cast<double>(log.drawn_counts.size());
    worst = std::max(worst, std::abs(s - 0.25));
  }
  const bool ok = log.eligible_cells >= 10000 && std::abs(rate - 0.20) <= 0.02 && worst <= 0.02 && restore(dirty, log) == t;
  report(8, "corruptor-statistics", ok,
         std::to_string(log.eligible_cells) + " cells, rate " + fmt("%.4f", rate) + ", op-count shares " +
             fmt("%.3f", share[0]) + "/" + fmt("%.3f", share[1]) + "/" + fmt("%.3f", share[2]) + "/" +
             fmt("%.3f", share[3]) + " (max deviation " + fmt("%.3f", worst) + ")");
}

void criterion_recall() {
  const auto t0 = Clock::now();
  const auto corpus = synthetic::generate_corpus(100, 100, 0.20, 1);
  auto oracle = bundled();
  RunConfig config;
  std::size_t columns = 0, corrupted = 0, reverted = 0;
  for (const auto& c : corpus) {
    const auto results = run_table(c.dirty, config, &oracle, true);
    columns += results.size();
    std::vector<RepairCandidate> top;
    for (const auto& r : results) {
      for (const auto& v : r.repairs) {
        if (v.candidates.empty()) continue;
        top.push_back(v.candidates.front());
        top.back().column = r.column;
        top.back().row = v.row;
      }
    }
    const auto s = score_recall(c.log, top);
    corrupted += s.corrupted;
    reverted += s.reverted;
  }
  const double secs = seconds_since(t0);
  const double recall = corrupted ? static_cast<double>(reverted) / static_cast<double>(corrupted) : 0.0;
  report(9, "synthetic-recall", columns >= 200 && recall >= 0.60 && secs < 300.0,
         std::to_string(columns) + " columns, recall " + fmt("%.3f", recall) + " (" + std::to_string(reverted) + "/" +
             std::to_string(corrupted) + ") in " + fmt("%.1f s", secs));
}

void criterion_delta_monotone() {
  int monotone = 0;
  std::string first;
  for (std::uint64_t seed = 101; seed <= 150; ++seed) {
    const Table t = synthetic::random_column(seed, 120);
    std::vector<std::size_t> previous;
    bool ok = true, emptied = false;
    for (int step = 1; step <= 9; ++step) {
      RunConfig config;
      config.delta = step / 10.0;
      config.oracle = "none";
      config.semantic = SemanticMode::no_abstraction;
      const auto results = run_table(t, config, nullptr, false);
      std::vector<std::size_t> rows;
      for (const auto& d : results.front().detections) rows.push_back(d.row);
      std::sort(rows.begin(), rows.end());
      // Once no pattern is significant nothing is reported.
      if (emptied || (rows.empty() && !previous.empty())) {
        emptied = true;
        ok = ok && rows.empty();
        continue;
      }
      if (!std::includes(rows.begin(), rows.end(), previous.begin(), previous.end())) ok = false;
      previous = rows;
    }
    if (ok) {
      ++monotone;
    } else if (first.empty()) {
      first = "seed " + std::to_string(seed);
    }
  }
  report(10, "delta-monotone", monotone == 50,
         std::to_string(monotone) + "/50 columns monotone over delta 0.1..0.9" + (first.empty() ? "" : "; first failure " + first));
}

void criterion_latency() {
  auto oracle = bundled();
  RunConfig config;
  std::vector<double> per_column;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto clean = synthetic::generate_table(i, 500, 77 + i);
    NoiseSpec spec;
    spec.seed = 500 + i;
    const auto dirty = corrupt(clean.table, spec).first;
    const auto t0 = Clock::now();
    const auto results = run_table(dirty, config, &oracle, true);
    const double secs = seconds_since(t0);
    per_column.push_back(secs / static_cast<double>(std::max<std::size_t>(1, results.size())));
  }
  std::sort(per_column.begin(), per_column.end());
  const double median = (per_column[9] + per_column[10]) / 2.0;
  report(11, "latency", median <= 0.5,
         "median " + fmt("%.1f ms", median * 1000.0) + " per 500-row column (max " +
             fmt("%.1f ms", per_column.back() * 1000.0) + ", 20 tables)");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      criterion_dp_equals_search, criterion_recurrence_audit, criterion_players,      criterion_folded_codes,
      criterion_dash_search,            criterion_codes_without_dash, criterion_semantics,  criterion_corruptor,
      criterion_recall,           criterion_delta_monotone,   criterion_latency,
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
