#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strfix/symbols.hpp"

namespace strfix {

enum class NodeKind { literal, char_class, mask, disjunction, group, sequence };
enum class Quantifier { once, one_or_more };

/// Regex AST node. Which fields are meaningful depends on `kind`:
/// literal and mask use `symbol`, char_class uses `char_class`, disjunction
/// uses `alternatives`, group and sequence use `children` (group also uses
/// `quantifier`).
struct PatternNode {
  NodeKind kind = NodeKind::sequence;
  Symbol symbol = 0;
  CharClass char_class = CharClass::digit;
  std::vector<SymbolString> alternatives;
  std::vector<PatternNode> children;
  Quantifier quantifier = Quantifier::once;

  static PatternNode literal(Symbol s);
  static PatternNode cls(CharClass c);
  static PatternNode mask(Symbol token);
  /// Alternatives are deduplicated and sorted.
  static PatternNode disjunction(std::vector<SymbolString> alternatives);
  static PatternNode group(std::vector<PatternNode> body, Quantifier q);
  static PatternNode sequence(std::vector<PatternNode> items);

  bool is_atom() const {
    return kind == NodeKind::literal || kind == NodeKind::char_class || kind == NodeKind::mask;
  }
  friend bool operator==(const PatternNode&, const PatternNode&) = default;
};

struct Pattern {
  PatternNode root;
  double coverage = 0.0;
  std::string id;
  /// Literal disjunction of the values left over once k patterns are kept;
  /// never significant.
  bool residual = false;
};

class PatternSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text syntax: classes as [0-9] [a-z] [A-Z] [a-zA-Z] [0-9a-zA-Z]
/// ␣ [0-9a-zA-Z␣] [0-1], masks as {type}, disjunctions as (a|b), groups as
/// (...)+ and runs of one class or mask as X{n}.
std::string to_text(const PatternNode& node, const MaskAlphabet* alphabet = nullptr);
std::string to_text(const Pattern& pattern, const MaskAlphabet* alphabet = nullptr);

/// Parses the canonical syntax; unseen mask types are added to `alphabet`.
PatternNode parse_pattern(std::string_view text, MaskAlphabet& alphabet);
PatternNode parse_pattern(std::string_view text);

/// Full-string membership.
bool matches(const PatternNode& node, SymbolView value);
bool matches(const Pattern& pattern, SymbolView value);

/// Fewest symbols any string of the node's language can have.
std::size_t min_length(const PatternNode& node);

/// Calls `fn(node, id)` in preorder; ids are stable for a given tree.
template <typename Fn>
void visit_preorder(const PatternNode& node, Fn&& fn) {
  int next = 0;
  auto walk = [&](auto& self, const PatternNode& n) -> void {
    fn(n, next++);
    for (const auto& c : n.children) self(self, c);
  };
  walk(walk, node);
}

}  // namespace strfix
