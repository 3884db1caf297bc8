#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strfix/pattern.hpp"
#include "strfix/semantics.hpp"
#include "strfix/symbols.hpp"

namespace strfix {

enum class LabelKind { symbol, char_class, symbol_set };

/// What one automaton edge reads: a literal or mask symbol, a character
/// class, or a set of single symbols (a disjunction of one-symbol strings).
struct EdgeLabel {
  LabelKind kind = LabelKind::symbol;
  Symbol symbol = 0;
  CharClass char_class = CharClass::digit;
  SymbolString set;

  bool accepts(Symbol s) const;
  bool may_emit_alnum() const;
  std::string text(const MaskAlphabet* alphabet = nullptr) const;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

/// Position automaton without epsilon moves. State 0 is initial; every other
/// state s is entered by reading labels[s], so each edge consumes exactly one
/// symbol.
struct Nfa {
  std::vector<EdgeLabel> labels;
  std::vector<std::vector<std::size_t>> next;
  std::vector<bool> accepting;

  std::size_t state_count() const { return labels.size(); }
  std::size_t edge_count() const;
};

Nfa compile_nfa(const PatternNode& pattern);
Nfa compile_nfa(const Pattern& pattern);

struct DagNode {
  EdgeLabel label;
  /// Predecessor nodes, all with smaller indices; 0 is the start node.
  std::vector<std::size_t> preds;
  /// Preorder id of the pattern node this position came from.
  int pattern_node = -1;
  /// 1-based copy index of each enclosing one_or_more group, outermost first.
  std::vector<int> copies;
  /// Set for positions of a multi-symbol disjunction.
  int instance = -1;
  int alternative = -1;
  int offset = 0;
  bool accepting = false;
};

/// Acyclic unrolling of a pattern for one value length. nodes[0] is the start
/// node and carries no label; the order of `nodes` is topological.
struct UnrolledDag {
  std::vector<DagNode> nodes;
  bool accepts_empty = false;
  std::size_t basis_length = 0;
  /// Copies per one_or_more group, keyed by the group's preorder id.
  std::vector<std::pair<int, int>> depths;
  /// Per disjunction instance: its alternatives and slot key.
  std::vector<std::vector<SymbolString>> instance_alternatives;
  std::vector<std::string> instance_slots;

  std::size_t edge_count() const;
  std::string slot_of(std::size_t node) const;
};

std::string slot_key(int pattern_node, const std::vector<int>& copies);

/// Each one_or_more group gets max(1, ceil(value_length / shortest body))
/// copies plus `extra_depth`; nested groups are unrolled the same way.
UnrolledDag unroll(const PatternNode& pattern, std::size_t value_length, std::size_t extra_depth = 0);

enum class ActionKind { match, insert, remove, substitute };

struct Move {
  ActionKind kind = ActionKind::remove;
  std::size_t pred = 0;
};

/// cost(i, j): fewest edits turning the first i value symbols into a string
/// that ends by entering node j. Row-major, (value length + 1) x nodes.
struct DpMatrices {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> cost;
  std::vector<Move> moves;

  int at(std::size_t i, std::size_t j) const { return cost[i * cols + j]; }
  const Move& move(std::size_t i, std::size_t j) const { return moves[i * cols + j]; }
};

struct DpStats {
  std::uint64_t operations = 0;
};

DpMatrices fill_dp(const UnrolledDag& dag, SymbolView value, DpStats* stats = nullptr);

/// Minimal cost over accepting nodes, or nullopt when none is reachable.
std::optional<int> best_cost(const UnrolledDag& dag, const DpMatrices& dp);

enum class EmitKind { none, symbol, char_class, symbol_set, alternatives, text };

struct EditAction {
  ActionKind kind = ActionKind::match;
  EmitKind emit = EmitKind::none;
  Symbol symbol = 0;
  CharClass char_class = CharClass::digit;
  SymbolString set;
  std::vector<SymbolString> alternatives;
  SymbolString text;
  /// Concrete text for an emitted mask token.
  std::optional<std::string> fill;
  /// Slot key for abstract emits and emitted masks.
  std::string slot;
  std::size_t consumed = 0;
  std::size_t width = 0;
  int cost = 0;

  bool is_abstract() const {
    return emit == EmitKind::char_class || emit == EmitKind::symbol_set || emit == EmitKind::alternatives;
  }
};

struct EditProgram {
  std::vector<EditAction> actions;
  int cost = 0;
  int alnum_edits = 0;
  std::string pattern_id;

  bool is_abstract() const;
};

/// Shorthand such as "M S([0-9]) I(.)".
std::string to_shorthand(const EditAction& action, const MaskAlphabet* alphabet = nullptr);
std::string to_shorthand(const EditProgram& program, const MaskAlphabet* alphabet = nullptr);

class ApplyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PartialApply {
  SymbolString output;
  std::size_t consumed = 0;
};

/// Runs actions left to right until they run out; throws ApplyError on an
/// abstract emit or when an action needs more input than remains.
PartialApply apply_partial(const EditProgram& program, SymbolView value);
/// Like apply_partial, but the program must consume the whole value.
SymbolString apply(const EditProgram& program, SymbolView value);
std::vector<TracedSymbol> apply_traced(const EditProgram& program, SymbolView value);

/// All minimal programs (abstract where the pattern is), at most
/// `max_programs`, ordered by fewer alphanumeric edits, later first edit,
/// then shorthand.
std::vector<EditProgram> min_edit_programs(const UnrolledDag& dag, SymbolView value, std::size_t max_programs = 10);

struct ProgramSearch {
  UnrolledDag dag;
  std::vector<EditProgram> programs;
  std::size_t extra_depth = 0;
};

/// Unrolls for `value`, runs the search and retries once with one more copy
/// per group when nothing is found.
ProgramSearch search_programs(const Pattern& pattern, SymbolView value, std::size_t max_programs = 10);

/// Zero-cost alignment of a value already in the unrolled language: the node
/// entered by each value symbol. nullopt when the value is not accepted.
std::optional<std::vector<std::size_t>> align(const UnrolledDag& dag, SymbolView value);

}  // namespace strfix
