#include "strfix/report.hpp"

#include <cmath>
#include <cstdio>

namespace strfix {

using nlohmann::json;

namespace {

void write(std::string& out, const json& v, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        write(out, v[i], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", d == 0.0 ? 0.0 : d);
      out += buf;
      return;
    }
    default: out += v.dump(); return;
  }
}

}  // namespace

std::string dump_json(const json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

json config_json(const RunConfig& c) {
  return {
      {"delta", c.delta},
      {"k", c.k},
      {"alpha", c.alpha},
      {"weights", {c.weights.w[0], c.weights.w[1], c.weights.w[2], c.weights.w[3]}},
      {"top_n", c.top_n},
      {"oracle", c.oracle},
      {"semantic", std::string(to_string(c.semantic))},
      {"concretization", std::string(to_string(c.concretization))},
      {"ranking", std::string(to_string(c.ranking))},
      {"seed", c.seed},
      {"flag_empty", c.flag_empty},
      {"max_programs", c.max_programs},
      {"guided_semantic", c.guided_semantic},
      {"types", c.types.types},
  };
}

json tree_json(const ConstraintTree& tree, const std::map<int, std::string>& predicates) {
  auto node = [&](auto& self, int at) -> json {
    const auto& n = tree.nodes.at(static_cast<std::size_t>(at));
    if (n.feature < 0) return {{"leaf", n.label}};
    const auto it = predicates.find(n.feature);
    return {{"predicate", it == predicates.end() ? std::to_string(n.feature) : it->second},
            {"true_branch", self(self, n.when_true)},
            {"false_branch", self(self, n.when_false)}};
  };
  return node(node, 0);
}

json candidate_json(const RepairCandidate& c) {
  json decided = json::array();
  for (const auto& [slot, by_tree] : c.decided_by_tree) {
    decided.push_back({{"slot", slot}, {"source", by_tree ? "constraint" : "frequency"}});
  }
  return {
      {"repaired", c.repaired},
      {"score", c.score},
      {"pattern_id", c.pattern_id},
      {"pattern", c.pattern},
      {"abstract_program", c.abstract_program},
      {"program", c.program},
      {"slots", decided},
      {"features",
       {{"edit_distance", c.features.edit_distance},
        {"alnum_edits", c.features.alnum_edits},
        {"min_distance_to_column", c.features.min_distance_to_column},
        {"pattern_coverage", c.features.pattern_coverage}}},
  };
}

json column_json(const ColumnResult& r, bool with_repairs, bool timings) {
  json patterns = json::array();
  for (std::size_t i = 0; i < r.patterns.size(); ++i) {
    const auto& p = r.patterns[i];
    const bool significant = std::find(r.significant.begin(), r.significant.end(), i) != r.significant.end();
    patterns.push_back(
        {{"id", p.id}, {"pattern", to_text(p, &r.alphabet)}, {"coverage", p.coverage}, {"significant", significant}});
  }
  json detections = json::array();
  for (const auto& d : r.detections) detections.push_back({{"row", d.row}, {"value", d.raw}, {"masked", d.masked}});
  json out = {
      {"name", r.column},
      {"index", r.column_index},
      {"rows", r.row_count},
      {"profiled_values", r.profiled_values},
      {"mask_types", r.alphabet.types()},
      {"patterns", patterns},
      {"detections", detections},
      {"fire_rate", r.fire_rate},
  };
  if (with_repairs) {
    json repairs = json::array();
    for (const auto& v : r.repairs) {
      json suggestions = json::array();
      for (const auto& c : v.candidates) suggestions.push_back(candidate_json(c));
      repairs.push_back({{"row", v.row},
                         {"original", v.original},
                         {"masked", v.masked},
                         {"suggestions", suggestions},
                         {"dropped", v.dropped}});
    }
    json constraints = json::array();
    for (const auto& c : r.constraints) {
      constraints.push_back({{"pattern_id", c.pattern_id},
                             {"slot", c.slot},
                             {"accuracy", c.tree.accuracy},
                             {"nodes", c.tree.node_count},
                             {"depth", c.tree.depth},
                             {"examples", c.tree.examples},
                             {"tree", tree_json(c.tree, c.predicates)}});
    }
    out["repairs"] = repairs;
    out["constraints"] = constraints;
  }
  out["warnings"] = r.warnings;
  if (timings) out["timing_ms"] = r.seconds * 1000.0;
  return out;
}

json verification_json(const Verification& v) {
  return {{"formula_success", v.formula_success}, {"cell_success_rate", v.cell_success_rate}, {"failures", v.failures}};
}

json exec_json(const ExecRepairResult& r, bool timings) {
  json columns = json::array();
  for (const auto& c : r.columns) columns.push_back(column_json(c, true, timings));
  json applied = json::array();
  for (const auto& a : r.applied) applied.push_back({{"column", a.column}, {"row", a.row}, {"value", a.value}});
  return {
      {"guided", r.guided},
      {"successes", r.partition.successes},
      {"failures", r.partition.failures},
      {"columns", columns},
      {"applied", applied},
      {"before", verification_json(r.before)},
      {"after", verification_json(r.after)},
      {"warnings", r.warnings},
  };
}

json recall_json(const RecallScore& s) {
  return {{"recall", s.recall},
          {"precision_lower_bound", s.precision_lower_bound},
          {"f1", s.f1},
          {"corrupted", s.corrupted},
          {"reverted", s.reverted},
          {"repairs", s.repairs}};
}

double mean_fire_rate(const std::vector<ColumnResult>& results) {
  if (results.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : results) total += r.fire_rate;
  return total / static_cast<double>(results.size());
}

}  // namespace strfix
