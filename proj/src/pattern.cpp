#include "strfix/pattern.hpp"

#include <algorithm>

namespace strfix {

PatternNode PatternNode::literal(Symbol s) {
  PatternNode n;
  n.kind = NodeKind::literal;
  n.symbol = s;
  return n;
}

PatternNode PatternNode::cls(CharClass c) {
  PatternNode n;
  n.kind = NodeKind::char_class;
  n.char_class = c;
  return n;
}

PatternNode PatternNode::mask(Symbol token) {
  PatternNode n;
  n.kind = NodeKind::mask;
  n.symbol = token;
  return n;
}

PatternNode PatternNode::disjunction(std::vector<SymbolString> alternatives) {
  std::sort(alternatives.begin(), alternatives.end());
  alternatives.erase(std::unique(alternatives.begin(), alternatives.end()), alternatives.end());
  PatternNode n;
  n.kind = NodeKind::disjunction;
  n.alternatives = std::move(alternatives);
  return n;
}

PatternNode PatternNode::group(std::vector<PatternNode> body, Quantifier q) {
  PatternNode n;
  n.kind = NodeKind::group;
  n.children = std::move(body);
  n.quantifier = q;
  return n;
}

PatternNode PatternNode::sequence(std::vector<PatternNode> items) {
  PatternNode n;
  n.kind = NodeKind::sequence;
  n.children = std::move(items);
  return n;
}

namespace {

constexpr std::u32string_view kSpecial = U"\\[]()|+{}␣";

void append_escaped(std::string& out, Symbol s, const MaskAlphabet* alphabet) {
  if (is_mask(s)) {
    out += render_symbols(SymbolView(&s, 1), alphabet);
    return;
  }
  if (kSpecial.find(s) != std::u32string_view::npos) out += '\\';
  out += encode_utf8(SymbolView(&s, 1));
}

void render(std::string& out, const PatternNode& node, const MaskAlphabet* alphabet);

void render_sequence(std::string& out, const std::vector<PatternNode>& items,
                     const MaskAlphabet* alphabet) {
  for (std::size_t i = 0; i < items.size();) {
    const auto& item = items[i];
    std::size_t run = 1;
    if (item.kind == NodeKind::char_class || item.kind == NodeKind::mask) {
      while (i + run < items.size() && items[i + run] == item) ++run;
    }
    render(out, item, alphabet);
    if (run > 1) out += "{" + std::to_string(run) + "}";
    i += run;
  }
}

void render(std::string& out, const PatternNode& node, const MaskAlphabet* alphabet) {
  switch (node.kind) {
    case NodeKind::literal:
    case NodeKind::mask:
      append_escaped(out, node.symbol, alphabet);
      break;
    case NodeKind::char_class:
      out += class_syntax(node.char_class);
      break;
    case NodeKind::disjunction:
      out += '(';
      for (std::size_t i = 0; i < node.alternatives.size(); ++i) {
        if (i) out += '|';
        for (Symbol s : node.alternatives[i]) append_escaped(out, s, alphabet);
      }
      out += ')';
      break;
    case NodeKind::group:
      out += '(';
      render_sequence(out, node.children, alphabet);
      out += node.quantifier == Quantifier::one_or_more ? ")+" : ")";
      break;
    case NodeKind::sequence:
      render_sequence(out, node.children, alphabet);
      break;
  }
}

class Parser {
 public:
  Parser(std::u32string text, MaskAlphabet& alphabet) : text_(std::move(text)), alphabet_(alphabet) {}

  PatternNode parse() {
    auto items = parse_sequence();
    if (pos_ != text_.size()) fail("unexpected ')'");
    return PatternNode::sequence(std::move(items));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PatternSyntaxError(msg + " at offset " + std::to_string(pos_));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  Symbol peek() const { return text_[pos_]; }

  bool starts_with(std::u32string_view s) const {
    return text_.compare(pos_, s.size(), s) == 0;
  }

  std::vector<PatternNode> parse_sequence() {
    std::vector<PatternNode> items;
    while (!at_end() && peek() != U')' && peek() != U'|') {
      auto node = parse_atom();
      std::size_t repeat = parse_repeat();
      for (std::size_t r = 0; r < repeat; ++r) items.push_back(node);
    }
    return items;
  }

  std::size_t parse_repeat() {
    if (at_end() || peek() != U'{') return 1;
    std::size_t p = pos_ + 1;
    std::size_t n = 0;
    bool digits = false;
    while (p < text_.size() && is_digit(text_[p])) {
      n = n * 10 + (text_[p] - U'0');
      digits = true;
      ++p;
    }
    if (!digits || p >= text_.size() || text_[p] != U'}') return 1;
    if (n == 0) fail("zero repetition");
    pos_ = p + 1;
    return n;
  }

  PatternNode parse_atom() {
    for (CharClass c : kAllClasses) {
      auto syntax = decode_utf8(class_syntax(c));
      if (starts_with(syntax)) {
        pos_ += syntax.size();
        return PatternNode::cls(c);
      }
    }
    const Symbol c = peek();
    if (c == U'[') fail("unknown character class");
    if (c == U'{') return PatternNode::mask(parse_mask());
    if (c == U'(') return parse_paren();
    if (c == U'+' || c == U'}' || c == U']') fail("unexpected metacharacter");
    return PatternNode::literal(parse_literal_symbol());
  }

  Symbol parse_literal_symbol() {
    if (peek() == U'\\') {
      ++pos_;
      if (at_end()) fail("dangling escape");
    }
    return text_[pos_++];
  }

  Symbol parse_mask() {
    ++pos_;
    std::u32string name;
    while (!at_end() && peek() != U'}') name.push_back(text_[pos_++]);
    if (at_end()) fail("unterminated mask");
    ++pos_;
    if (name.empty()) fail("empty mask type");
    return alphabet_.token_for(encode_utf8(name));
  }

  PatternNode parse_paren() {
    const std::size_t open = pos_;
    ++pos_;
    // A top-level '|' inside the parentheses makes it a disjunction of
    // literal strings.
    std::size_t depth = 0;
    bool is_disjunction = false;
    for (std::size_t p = pos_; p < text_.size(); ++p) {
      if (text_[p] == U'\\') {
        ++p;
        continue;
      }
      if (text_[p] == U'(') ++depth;
      if (text_[p] == U')') {
        if (depth == 0) break;
        --depth;
      }
      if (text_[p] == U'|' && depth == 0) {
        is_disjunction = true;
        break;
      }
    }
    PatternNode node;
    if (is_disjunction) {
      std::vector<SymbolString> alts(1);
      while (true) {
        if (at_end()) {
          pos_ = open;
          fail("unterminated disjunction");
        }
        const Symbol c = peek();
        if (c == U')') {
          ++pos_;
          break;
        }
        if (c == U'|') {
          ++pos_;
          alts.emplace_back();
          continue;
        }
        if (c == U'{') {
          alts.back().push_back(parse_mask());
        } else {
          alts.back().push_back(parse_literal_symbol());
        }
      }
      for (const auto& a : alts) {
        if (a.empty()) fail("empty disjunction alternative");
      }
      node = PatternNode::disjunction(std::move(alts));
    } else {
      auto body = parse_sequence();
      if (at_end() || peek() != U')') fail("unterminated group");
      ++pos_;
      node = PatternNode::group(std::move(body), Quantifier::once);
    }
    if (!at_end() && peek() == U'+') {
      ++pos_;
      if (node.kind == NodeKind::group) {
        node.quantifier = Quantifier::one_or_more;
      } else {
        node = PatternNode::group({std::move(node)}, Quantifier::one_or_more);
      }
    }
    return node;
  }

  std::u32string text_;
  MaskAlphabet& alphabet_;
  std::size_t pos_ = 0;
};

using PositionSet = std::vector<char>;

PositionSet advance(const PatternNode& node, SymbolView s, const PositionSet& from) {
  const std::size_t n = s.size();
  PositionSet out(n + 1, 0);
  switch (node.kind) {
    case NodeKind::literal:
    case NodeKind::mask:
      for (std::size_t p = 0; p < n; ++p) {
        if (from[p] && s[p] == node.symbol) out[p + 1] = 1;
      }
      break;
    case NodeKind::char_class:
      for (std::size_t p = 0; p < n; ++p) {
        if (from[p] && class_contains(node.char_class, s[p])) out[p + 1] = 1;
      }
      break;
    case NodeKind::disjunction:
      for (std::size_t p = 0; p <= n; ++p) {
        if (!from[p]) continue;
        for (const auto& alt : node.alternatives) {
          if (s.substr(p, alt.size()) == alt) out[p + alt.size()] = 1;
        }
      }
      break;
    case NodeKind::sequence:
    case NodeKind::group: {
      PositionSet cur = from;
      for (const auto& child : node.children) cur = advance(child, s, cur);
      if (node.kind == NodeKind::group && node.quantifier == Quantifier::one_or_more) {
        PositionSet result = cur;
        PositionSet frontier = cur;
        bool grew = true;
        while (grew) {
          PositionSet next = frontier;
          for (const auto& child : node.children) next = advance(child, s, next);
          grew = false;
          for (std::size_t p = 0; p <= n; ++p) {
            frontier[p] = next[p] && !result[p];
            if (frontier[p]) {
              result[p] = 1;
              grew = true;
            }
          }
        }
        cur = std::move(result);
      }
      out = std::move(cur);
      break;
    }
  }
  return out;
}

}  // namespace

std::string to_text(const PatternNode& node, const MaskAlphabet* alphabet) {
  std::string out;
  render(out, node, alphabet);
  return out;
}

std::string to_text(const Pattern& pattern, const MaskAlphabet* alphabet) {
  return to_text(pattern.root, alphabet);
}

PatternNode parse_pattern(std::string_view text, MaskAlphabet& alphabet) {
  return Parser(decode_utf8(text), alphabet).parse();
}

PatternNode parse_pattern(std::string_view text) {
  MaskAlphabet scratch;
  return parse_pattern(text, scratch);
}

bool matches(const PatternNode& node, SymbolView value) {
  PositionSet start(value.size() + 1, 0);
  start[0] = 1;
  return advance(node, value, start)[value.size()] != 0;
}

bool matches(const Pattern& pattern, SymbolView value) { return matches(pattern.root, value); }

std::size_t min_length(const PatternNode& node) {
  switch (node.kind) {
    case NodeKind::literal:
    case NodeKind::mask:
    case NodeKind::char_class:
      return 1;
    case NodeKind::disjunction: {
      std::size_t best = node.alternatives.empty() ? 0 : node.alternatives.front().size();
      for (const auto& a : node.alternatives) best = std::min(best, a.size());
      return best;
    }
    case NodeKind::group:
    case NodeKind::sequence: {
      std::size_t total = 0;
      for (const auto& c : node.children) total += min_length(c);
      return total;
    }
  }
  return 0;
}

}  // namespace strfix
