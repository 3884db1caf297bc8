#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strfix/edit_engine.hpp"
#include "strfix/pattern.hpp"
#include "strfix/table.hpp"

namespace strfix {

enum class PredicateTemplate {
  equals,
  contains,
  starts_with,
  ends_with,
  length,
  has_digits,
  is_num,
  is_error,
  is_formula,
  is_logical,
  is_na,
  is_text,
};

struct Predicate {
  PredicateTemplate tmpl = PredicateTemplate::equals;
  std::size_t column = 0;
  std::string column_name;
  std::string text;
  std::size_t length = 0;

  bool evaluate(const CellValue& cell) const;
  /// e.g. equals(Category, "Professional")
  std::string describe() const;
};

/// Alphanumeric runs of `value` further split at case changes and
/// letter/digit boundaries, plus the non-alphanumeric pieces between them.
std::vector<std::string> split_tokens(std::string_view value);

struct FeatureOptions {
  /// Most frequent string constants kept per column and template.
  std::size_t constants_per_template = 100;
  std::size_t length_constants = 5;
};

/// Boolean predicates over every column of a table, evaluated on every row.
/// Predicates with the same value on all rows are dropped.
class FeatureSet {
 public:
  static FeatureSet build(const Table& table, const FeatureOptions& options = {});

  const std::vector<Predicate>& predicates() const { return predicates_; }
  std::size_t size() const { return predicates_.size(); }
  std::size_t row_count() const { return rows_; }
  bool value(std::size_t feature, std::size_t row) const {
    return (bits_[feature][row / 64] >> (row % 64)) & 1U;
  }
  /// Feature vector of one row.
  std::vector<bool> row_features(std::size_t row) const;

 private:
  std::vector<Predicate> predicates_;
  std::vector<std::vector<std::uint64_t>> bits_;
  std::size_t rows_ = 0;
};

struct TrainingExample {
  std::size_t row = 0;
  std::string label;
};

/// Decision tree over FeatureSet predicates. nodes[0] is the root; a node
/// with feature < 0 is a leaf.
struct ConstraintTree {
  struct Node {
    int feature = -1;
    int when_true = -1;
    int when_false = -1;
    std::string label;
  };
  std::vector<Node> nodes;
  double accuracy = 0.0;
  int node_count = 0;
  int depth = 0;
  std::size_t examples = 0;

  const std::string& predict(const FeatureSet& features, std::size_t row) const;
};

struct TreeOptions {
  double alpha = 0.8;
  std::size_t max_features = 200;
  /// Column holding the values being repaired; its predicates are never
  /// split on, since an erroneous row's own value is what is being fixed.
  std::optional<std::size_t> target_column;
};

/// Tries tree shapes in (nodes, depth) order (1,0), (3,1), (5,2), (7,2) and
/// returns the most accurate tree of the first shape reaching alpha.
std::optional<ConstraintTree> learn_tree(std::span<const TrainingExample> examples, const FeatureSet& features,
                                         const TreeOptions& options = {});

/// Slot keys of the class, symbol-set, disjunction and mask positions of a
/// DAG, in node order.
std::vector<std::string> extract_slots(const UnrolledDag& dag);

struct ConcretizerOptions {
  double alpha = 0.8;
  /// When false, trees are never learned and every observed symbol is tried.
  bool learned = true;
  std::size_t fallback_top = 3;
  std::size_t frequency_cap = 10;
  std::size_t max_features = 200;
  std::size_t max_candidates = 20;
};

/// A value of the column known to match the pattern.
struct TrainingRow {
  std::size_t row = 0;
  SymbolString value;
  /// Text of each mask token in `value`, in order.
  std::vector<std::string> mask_texts;
};

struct ConcreteProgram {
  EditProgram program;
  /// Slot key -> whether a learned tree chose its value.
  std::map<std::string, bool> decided_by_tree;
};

struct SlotModel {
  std::string key;
  int pattern_node = -1;
  std::vector<int> copies;
  std::vector<TrainingExample> examples;
  /// Observed labels, most frequent first, ties by text.
  std::vector<std::pair<std::string, std::size_t>> frequencies;
  bool tree_learned = false;
  std::optional<ConstraintTree> tree;
};

/// Learns per-slot constraints for one pattern from its matching rows and
/// turns abstract programs into concrete ones.
class PatternConcretizer {
 public:
  PatternConcretizer(const Pattern& pattern, const FeatureSet& features, std::span<const TrainingRow> rows,
                     std::optional<std::size_t> target_column, ConcretizerOptions options = {});

  /// Concrete programs for `row`, in preference order. `source` is the value
  /// the program edits. Empty with `reason` set when an abstract slot has
  /// nothing to choose from.
  std::vector<ConcreteProgram> concretize(const EditProgram& program, std::size_t row, SymbolView source = {},
                                          std::string* reason = nullptr);

  /// Slot models learned so far, by key.
  const std::map<std::string, SlotModel>& slots() const { return slots_; }
  /// Learns (or returns the cached) tree of a slot.
  const std::optional<ConstraintTree>& tree_for(const std::string& key);

 private:
  SlotModel* model_for(const std::string& key);
  std::vector<std::string> choices(const EditAction& action, std::size_t row, SymbolView consumed, bool& by_tree);

  const FeatureSet& features_;
  std::optional<std::size_t> target_column_;
  ConcretizerOptions options_;
  std::map<std::string, SlotModel> slots_;
  std::mutex mutex_;
};

}  // namespace strfix
