#include <algorithm>

#include "doctest.h"
#include "strfix/concretizer.hpp"

using namespace strfix;

namespace {

Table two_columns(const std::vector<std::pair<const char*, const char*>>& rows) {
  std::string csv = "Category,Code\n";
  for (const auto& [a, b] : rows) csv += std::string(a) + "," + b + "\n";
  return parse_csv(csv);
}

std::vector<TrainingRow> training(const Table& t, const Pattern& p) {
  std::vector<TrainingRow> out;
  const auto& col = t.column(1);
  for (std::size_t r = 0; r < col.values.size(); ++r) {
    const auto s = decode_utf8(col.values[r].raw);
    if (matches(p, s)) out.push_back({r, s, {}});
  }
  return out;
}

std::vector<std::string> outputs(const std::vector<ConcreteProgram>& programs, SymbolView source) {
  std::vector<std::string> out;
  for (const auto& cp : programs) out.push_back(encode_utf8(strfix::apply(cp.program, source)));
  return out;
}

}  // namespace

TEST_CASE("token splitting") {
  CHECK(split_tokens("US-101-JUN") == std::vector<std::string>{"US", "-", "101", "JUN"});
  CHECK(split_tokens("abc12Def") == std::vector<std::string>{"abc", "12", "Def"});
  CHECK(split_tokens("a a") == std::vector<std::string>{"a", " "});
  CHECK(split_tokens("").empty());
}

TEST_CASE("predicate rendering and evaluation") {
  Predicate p;
  p.column_name = "Category";
  p.text = "Professional";
  CHECK(p.describe() == "equals(Category, \"Professional\")");
  CHECK(p.evaluate(CellValue::from_text("Professional")));
  CHECK_FALSE(p.evaluate(CellValue::from_text("Pro")));
  p.tmpl = PredicateTemplate::length;
  p.length = 3;
  CHECK(p.describe() == "length(Category, 3)");
  CHECK(p.evaluate(CellValue::from_text("abc")));
  p.tmpl = PredicateTemplate::is_na;
  CHECK(p.describe() == "isNA(Category)");
  CHECK(p.evaluate(CellValue::na()));
}

TEST_CASE("feature set drops constant predicates") {
  const auto t = two_columns({{"A", "x"}, {"B", "x"}, {"A", "x"}});
  const auto fs = FeatureSet::build(t);
  CHECK(fs.row_count() == 3);
  for (const auto& p : fs.predicates()) CHECK(p.column == 0);
  const auto it = std::find_if(fs.predicates().begin(), fs.predicates().end(),
                               [](const Predicate& p) { return p.describe() == "equals(Category, \"A\")"; });
  REQUIRE(it != fs.predicates().end());
  const auto f = static_cast<std::size_t>(it - fs.predicates().begin());
  CHECK(fs.row_features(0)[f]);
  CHECK_FALSE(fs.row_features(1)[f]);
}

TEST_CASE("a one-split tree separates two labels") {
  const auto t = two_columns({{"J", "x"}, {"P", "y"}, {"J", "x"}, {"P", "y"}});
  const auto fs = FeatureSet::build(t);
  const std::vector<TrainingExample> ex{{0, "JUN"}, {1, "PRO"}, {2, "JUN"}, {3, "PRO"}};
  TreeOptions o;
  o.target_column = 1;
  const auto tree = learn_tree(ex, fs, o);
  REQUIRE(tree.has_value());
  CHECK(tree->accuracy == 1.0);
  CHECK(tree->node_count == 3);
  CHECK(tree->depth == 1);
  CHECK(fs.predicates()[static_cast<std::size_t>(tree->nodes[0].feature)].column == 0);
  CHECK(tree->predict(fs, 1) == "PRO");

  const std::vector<TrainingExample> same{{0, "A"}, {1, "A"}, {2, "A"}, {3, "B"}};
  CHECK_FALSE(learn_tree(same, fs, o).has_value());
  o.alpha = 0.7;
  const auto leaf = learn_tree(same, fs, o);
  REQUIRE(leaf.has_value());
  CHECK(leaf->node_count == 1);
  CHECK(leaf->predict(fs, 3) == "A");
}

TEST_CASE("the target column is never split on") {
  const auto t = two_columns({{"K", "a"}, {"K", "b"}, {"K", "a"}, {"K", "b"}});
  const auto fs = FeatureSet::build(t);
  const std::vector<TrainingExample> ex{{0, "1"}, {1, "2"}, {2, "1"}, {3, "2"}};
  TreeOptions o;
  o.target_column = 1;
  CHECK_FALSE(learn_tree(ex, fs, o).has_value());
  o.target_column.reset();
  CHECK(learn_tree(ex, fs, o).has_value());
}

TEST_CASE("disjunction slot is chosen by the other column") {
  const auto t = two_columns({{"Junior", "x-JUN"},
                              {"Professional", "x-PRO"},
                              {"Junior", "x-JUN"},
                              {"Professional", "x-PRO"},
                              {"Junior", "x-JUN"},
                              {"Professional", "x-"}});
  Pattern p;
  p.root = parse_pattern("x-(JUN|PRO)");
  const auto fs = FeatureSet::build(t);
  const auto rows = training(t, p);
  CHECK(rows.size() == 5);
  PatternConcretizer c(p, fs, rows, 1);
  const SymbolString broken = U"x-";
  const auto search = search_programs(p, broken);
  REQUIRE_FALSE(search.programs.empty());
  const auto concrete = c.concretize(search.programs[0], 5, broken);
  REQUIRE_FALSE(concrete.empty());
  CHECK(outputs(concrete, broken).front() == "x-PRO");
  REQUIRE(concrete.front().decided_by_tree.size() == 1);
  CHECK(concrete.front().decided_by_tree.begin()->second);
  CHECK(extract_slots(search.dag).size() == 1);
}

TEST_CASE("frequency fallback orders observed symbols") {
  const auto t = two_columns(
      {{"a", "c-2"}, {"b", "c-2"}, {"a", "c-2"}, {"b", "c-5"}, {"a", "c-5"}, {"b", "c-7"}, {"a", "c-x"}});
  Pattern p;
  p.root = parse_pattern("c-[0-9]");
  const auto fs = FeatureSet::build(t);
  ConcretizerOptions o;
  o.learned = false;
  PatternConcretizer c(p, fs, training(t, p), 1, o);
  const SymbolString broken = U"c-x";
  const auto search = search_programs(p, broken);
  REQUIRE(search.programs.size() == 1);
  const auto concrete = c.concretize(search.programs[0], 6, broken);
  CHECK(outputs(concrete, broken) == std::vector<std::string>{"c-2", "c-5", "c-7"});
  for (const auto& cp : concrete) CHECK_FALSE(cp.decided_by_tree.begin()->second);
}

TEST_CASE("an abstract slot without observations yields nothing") {
  const auto t = two_columns({{"a", "q"}, {"b", "q"}});
  Pattern p;
  p.root = parse_pattern("c-[0-9]");
  const auto fs = FeatureSet::build(t);
  PatternConcretizer c(p, fs, training(t, p), 1);
  const SymbolString broken = U"c-x";
  const auto search = search_programs(p, broken);
  REQUIRE_FALSE(search.programs.empty());
  std::string reason;
  CHECK(c.concretize(search.programs[0], 0, broken, &reason).empty());
  CHECK(reason.rfind("no-observed-values-for-slot", 0) == 0);
}
