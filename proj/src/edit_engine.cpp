#include "strfix/edit_engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace strfix {

bool EdgeLabel::accepts(Symbol s) const {
  switch (kind) {
    case LabelKind::symbol: return s == symbol;
    case LabelKind::char_class: return class_contains(char_class, s);
    case LabelKind::symbol_set: return set.find(s) != SymbolString::npos;
  }
  return false;
}

bool EdgeLabel::may_emit_alnum() const {
  switch (kind) {
    case LabelKind::symbol: return is_alnum(symbol) || is_mask(symbol);
    case LabelKind::char_class: return char_class != CharClass::space;
    case LabelKind::symbol_set:
      return std::any_of(set.begin(), set.end(), [](Symbol s) { return is_alnum(s) || is_mask(s); });
  }
  return false;
}

namespace {

std::string escape_symbols(SymbolView text, const MaskAlphabet* alphabet) {
  std::string out;
  for (Symbol s : text) {
    if (is_mask(s)) {
      out += render_symbols(SymbolView(&s, 1), alphabet);
    } else {
      if (s == U'(' || s == U')' || s == U'|' || s == U'\\') out += '\\';
      out += encode_utf8(SymbolView(&s, 1));
    }
  }
  return out;
}

std::string render_alternatives(const std::vector<SymbolString>& alts, const MaskAlphabet* alphabet) {
  std::string out = "(";
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (i) out += '|';
    out += escape_symbols(alts[i], alphabet);
  }
  return out + ")";
}

}  // namespace

std::string EdgeLabel::text(const MaskAlphabet* alphabet) const {
  switch (kind) {
    case LabelKind::symbol: return escape_symbols(SymbolView(&symbol, 1), alphabet);
    case LabelKind::char_class: return std::string(class_syntax(char_class));
    case LabelKind::symbol_set: {
      std::vector<SymbolString> alts;
      for (Symbol s : set) alts.emplace_back(1, s);
      return render_alternatives(alts, alphabet);
    }
  }
  return {};
}

std::size_t Nfa::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : next) n += e.size();
  return n;
}

std::size_t UnrolledDag::edge_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.preds.size();
  return n;
}

std::string slot_key(int pattern_node, const std::vector<int>& copies) {
  std::string key = std::to_string(pattern_node);
  for (std::size_t i = 0; i < copies.size(); ++i) {
    key += i ? '.' : '@';
    key += std::to_string(copies[i]);
  }
  return key;
}

std::string UnrolledDag::slot_of(std::size_t node) const {
  const auto& n = nodes.at(node);
  if (n.instance >= 0) return instance_slots.at(static_cast<std::size_t>(n.instance));
  return slot_key(n.pattern_node, n.copies);
}

namespace {

struct Frag {
  bool nullable = true;
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;
};

// Position-automaton construction shared by compile_nfa (cycles kept) and
// unroll (cycles replaced by a bounded number of copies).
class Builder {
 public:
  Builder(bool unrolled, std::size_t value_length, std::size_t extra_depth)
      : unrolled_(unrolled), value_length_(value_length), extra_depth_(extra_depth) {
    nodes_.emplace_back();
    follow_.emplace_back();
  }

  Frag build(const PatternNode& node) {
    const int id = next_id_++;
    switch (node.kind) {
      case NodeKind::literal:
      case NodeKind::mask: {
        EdgeLabel label;
        label.symbol = node.symbol;
        return single(add_position(label, id));
      }
      case NodeKind::char_class: {
        EdgeLabel label;
        label.kind = LabelKind::char_class;
        label.char_class = node.char_class;
        return single(add_position(label, id));
      }
      case NodeKind::disjunction: return build_disjunction(node, id);
      case NodeKind::sequence: return build_sequence(node.children);
      case NodeKind::group: {
        if (node.quantifier == Quantifier::once) return build_sequence(node.children);
        if (!unrolled_) {
          Frag body = build_sequence(node.children);
          link(body.last, body.first);
          return body;
        }
        const std::size_t shortest = std::max<std::size_t>(1, min_length(node));
        const std::size_t depth =
            std::max<std::size_t>(1, (value_length_ + shortest - 1) / shortest) + extra_depth_;
        depths_.emplace_back(id, static_cast<int>(depth));
        const int body_start = next_id_;
        std::vector<Frag> copies;
        for (std::size_t c = 1; c <= depth; ++c) {
          next_id_ = body_start;
          copies_.push_back(static_cast<int>(c));
          copies.push_back(build_sequence(node.children));
          copies_.pop_back();
        }
        Frag tail = copies.back();
        for (std::size_t c = depth - 1; c-- > 0;) {
          tail.nullable = true;
          tail = concat(copies[c], tail);
        }
        return tail;
      }
    }
    return {};
  }

  Nfa finish_nfa(const Frag& root) {
    Nfa nfa;
    finalize(root);
    for (const auto& n : nodes_) {
      nfa.labels.push_back(n.label);
      nfa.accepting.push_back(n.accepting);
    }
    nfa.next = follow_;
    for (auto& e : nfa.next) {
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    return nfa;
  }

  UnrolledDag finish_dag(const Frag& root) {
    UnrolledDag dag;
    finalize(root);
    for (std::size_t from = 0; from < follow_.size(); ++from) {
      for (std::size_t to : follow_[from]) nodes_[to].preds.push_back(from);
    }
    for (auto& n : nodes_) {
      std::sort(n.preds.begin(), n.preds.end());
      n.preds.erase(std::unique(n.preds.begin(), n.preds.end()), n.preds.end());
    }
    dag.nodes = std::move(nodes_);
    dag.accepts_empty = root.nullable;
    dag.basis_length = value_length_;
    dag.depths = std::move(depths_);
    dag.instance_alternatives = std::move(instance_alternatives_);
    dag.instance_slots = std::move(instance_slots_);
    return dag;
  }

 private:
  void finalize(const Frag& root) {
    for (std::size_t p : root.first) follow_[0].push_back(p);
    for (std::size_t p : root.last) nodes_[p].accepting = true;
    nodes_[0].accepting = root.nullable;
  }

  std::size_t add_position(const EdgeLabel& label, int id) {
    DagNode n;
    n.label = label;
    n.pattern_node = id;
    n.copies = copies_;
    nodes_.push_back(std::move(n));
    follow_.emplace_back();
    return nodes_.size() - 1;
  }

  static Frag single(std::size_t p) { return {false, {p}, {p}}; }

  void link(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    for (std::size_t a : from) {
      for (std::size_t b : to) follow_[a].push_back(b);
    }
  }

  Frag concat(const Frag& a, const Frag& b) {
    link(a.last, b.first);
    Frag out;
    out.nullable = a.nullable && b.nullable;
    out.first = a.first;
    if (a.nullable) out.first.insert(out.first.end(), b.first.begin(), b.first.end());
    out.last = b.last;
    if (b.nullable) out.last.insert(out.last.end(), a.last.begin(), a.last.end());
    return out;
  }

  Frag build_sequence(const std::vector<PatternNode>& items) {
    Frag acc;
    for (const auto& item : items) acc = concat(acc, build(item));
    return acc;
  }

  Frag build_disjunction(const PatternNode& node, int id) {
    const bool singles = std::all_of(node.alternatives.begin(), node.alternatives.end(), [](const SymbolString& a) {
      return a.size() == 1 && !is_mask(a[0]);
    });
    if (singles) {
      EdgeLabel label;
      label.kind = LabelKind::symbol_set;
      for (const auto& a : node.alternatives) label.set += a;
      std::sort(label.set.begin(), label.set.end());
      return single(add_position(label, id));
    }
    const int instance = static_cast<int>(instance_slots_.size());
    instance_slots_.push_back(slot_key(id, copies_));
    instance_alternatives_.push_back(node.alternatives);
    Frag out;
    out.nullable = false;
    for (std::size_t a = 0; a < node.alternatives.size(); ++a) {
      Frag chain;
      const auto& alt = node.alternatives[a];
      for (std::size_t k = 0; k < alt.size(); ++k) {
        EdgeLabel label;
        label.symbol = alt[k];
        const std::size_t p = add_position(label, id);
        nodes_[p].instance = instance;
        nodes_[p].alternative = static_cast<int>(a);
        nodes_[p].offset = static_cast<int>(k);
        chain = concat(chain, single(p));
      }
      out.first.insert(out.first.end(), chain.first.begin(), chain.first.end());
      out.last.insert(out.last.end(), chain.last.begin(), chain.last.end());
    }
    return out;
  }

  bool unrolled_;
  std::size_t value_length_;
  std::size_t extra_depth_;
  int next_id_ = 0;
  std::vector<int> copies_;
  std::vector<DagNode> nodes_;
  std::vector<std::vector<std::size_t>> follow_;
  std::vector<std::pair<int, int>> depths_;
  std::vector<std::vector<SymbolString>> instance_alternatives_;
  std::vector<std::string> instance_slots_;
};

constexpr int kInfinity = std::numeric_limits<int>::max() / 4;

}  // namespace

Nfa compile_nfa(const PatternNode& pattern) {
  Builder b(false, 0, 0);
  const Frag root = b.build(pattern);
  return b.finish_nfa(root);
}

Nfa compile_nfa(const Pattern& pattern) { return compile_nfa(pattern.root); }

UnrolledDag unroll(const PatternNode& pattern, std::size_t value_length, std::size_t extra_depth) {
  Builder b(true, value_length, extra_depth);
  const Frag root = b.build(pattern);
  return b.finish_dag(root);
}

DpMatrices fill_dp(const UnrolledDag& dag, SymbolView value, DpStats* stats) {
  DpMatrices dp;
  dp.rows = value.size() + 1;
  dp.cols = dag.nodes.size();
  dp.cost.assign(dp.rows * dp.cols, kInfinity);
  dp.moves.assign(dp.rows * dp.cols, Move{});
  std::uint64_t ops = 0;
  for (std::size_t i = 0; i < dp.rows; ++i) {
    dp.cost[i * dp.cols] = static_cast<int>(i);
    dp.moves[i * dp.cols] = Move{ActionKind::remove, 0};
    for (std::size_t j = 1; j < dp.cols; ++j) {
      const auto& node = dag.nodes[j];
      int best = kInfinity;
      Move move;
      if (i > 0) {
        const bool ok = node.label.accepts(value[i - 1]);
        for (std::size_t p : node.preds) {
          ++ops;
          const int c = dp.cost[(i - 1) * dp.cols + p] + (ok ? 0 : 1);
          if (c < best) {
            best = c;
            move = {ok ? ActionKind::match : ActionKind::substitute, p};
          }
        }
        ++ops;
        const int d = dp.cost[(i - 1) * dp.cols + j] + 1;
        if (d < best) {
          best = d;
          move = {ActionKind::remove, j};
        }
      }
      for (std::size_t p : node.preds) {
        ++ops;
        const int c = dp.cost[i * dp.cols + p] + 1;
        if (c < best) {
          best = c;
          move = {ActionKind::insert, p};
        }
      }
      dp.cost[i * dp.cols + j] = std::min(best, kInfinity);
      dp.moves[i * dp.cols + j] = move;
    }
  }
  if (stats) stats->operations += ops;
  return dp;
}

std::optional<int> best_cost(const UnrolledDag& dag, const DpMatrices& dp) {
  int best = kInfinity;
  const std::size_t n = dp.rows - 1;
  for (std::size_t j = 0; j < dp.cols; ++j) {
    if (dag.nodes[j].accepting) best = std::min(best, dp.at(n, j));
  }
  if (best >= kInfinity) return std::nullopt;
  return best;
}

bool EditProgram::is_abstract() const {
  return std::any_of(actions.begin(), actions.end(), [](const EditAction& a) { return a.is_abstract(); });
}

std::string to_shorthand(const EditAction& a, const MaskAlphabet* alphabet) {
  if (a.kind == ActionKind::match) return "M";
  if (a.kind == ActionKind::remove) return "D";
  std::string body;
  switch (a.emit) {
    case EmitKind::symbol: body = escape_symbols(SymbolView(&a.symbol, 1), alphabet); break;
    case EmitKind::char_class: body = std::string(class_syntax(a.char_class)); break;
    case EmitKind::symbol_set: {
      EdgeLabel l;
      l.kind = LabelKind::symbol_set;
      l.set = a.set;
      body = l.text(alphabet);
      break;
    }
    case EmitKind::alternatives: body = render_alternatives(a.alternatives, alphabet); break;
    case EmitKind::text: body = escape_symbols(a.text, alphabet); break;
    case EmitKind::none: break;
  }
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  return std::string(a.kind == ActionKind::insert ? "I(" : "S(") + body + ")";
}

std::string to_shorthand(const EditProgram& program, const MaskAlphabet* alphabet) {
  std::string out;
  for (const auto& a : program.actions) {
    if (!out.empty()) out += ' ';
    out += to_shorthand(a, alphabet);
  }
  return out;
}

namespace {

SymbolString emitted(const EditAction& a, SymbolView value, std::size_t pos) {
  switch (a.kind) {
    case ActionKind::match: return SymbolString(value.substr(pos, 1));
    case ActionKind::remove: return {};
    default: break;
  }
  switch (a.emit) {
    case EmitKind::symbol: return SymbolString(1, a.symbol);
    case EmitKind::text: return a.text;
    case EmitKind::none: return {};
    default: throw ApplyError("program has an abstract emit: " + to_shorthand(a));
  }
}

std::size_t consumed_by(const EditAction& a) {
  if (a.kind == ActionKind::insert) return 0;
  if (a.kind == ActionKind::match) return 1;
  return a.consumed;
}

}  // namespace

PartialApply apply_partial(const EditProgram& program, SymbolView value) {
  PartialApply out;
  for (const auto& a : program.actions) {
    const std::size_t need = consumed_by(a);
    if (out.consumed + need > value.size()) throw ApplyError("program consumes past the end of the value");
    out.output += emitted(a, value, out.consumed);
    out.consumed += need;
  }
  return out;
}

SymbolString apply(const EditProgram& program, SymbolView value) {
  auto r = apply_partial(program, value);
  if (r.consumed != value.size()) throw ApplyError("program ends before the value does");
  return r.output;
}

std::vector<TracedSymbol> apply_traced(const EditProgram& program, SymbolView value) {
  std::vector<TracedSymbol> out;
  std::size_t pos = 0;
  for (const auto& a : program.actions) {
    const std::size_t need = consumed_by(a);
    if (pos + need > value.size()) throw ApplyError("program consumes past the end of the value");
    if (a.kind == ActionKind::match) {
      out.push_back({value[pos], pos, std::nullopt});
    } else {
      for (Symbol s : emitted(a, value, pos)) out.push_back({s, std::nullopt, a.fill});
    }
    pos += need;
  }
  if (pos != value.size()) throw ApplyError("program ends before the value does");
  return out;
}

namespace {

struct Step {
  ActionKind kind;
  std::size_t node;
};

constexpr std::size_t kMaxPaths = 4096;

class Enumerator {
 public:
  Enumerator(const UnrolledDag& dag, const DpMatrices& dp, SymbolView value)
      : dag_(dag), dp_(dp), value_(value) {}

  std::vector<std::vector<Step>> run(int target) {
    const std::size_t n = value_.size();
    for (std::size_t j = 0; j < dp_.cols && paths_.size() < kMaxPaths; ++j) {
      if (dag_.nodes[j].accepting && dp_.at(n, j) == target) dfs(n, j);
    }
    return std::move(paths_);
  }

 private:
  void dfs(std::size_t i, std::size_t j) {
    if (paths_.size() >= kMaxPaths) return;
    if (j == 0) {
      std::vector<Step> path(i, Step{ActionKind::remove, 0});
      path.insert(path.end(), stack_.rbegin(), stack_.rend());
      paths_.push_back(std::move(path));
      return;
    }
    const auto& node = dag_.nodes[j];
    const int c = dp_.at(i, j);
    if (i > 0) {
      const bool ok = node.label.accepts(value_[i - 1]);
      for (std::size_t p : node.preds) {
        if (dp_.at(i - 1, p) + (ok ? 0 : 1) == c) {
          stack_.push_back({ok ? ActionKind::match : ActionKind::substitute, j});
          dfs(i - 1, p);
          stack_.pop_back();
        }
      }
      if (dp_.at(i - 1, j) + 1 == c) {
        stack_.push_back({ActionKind::remove, j});
        dfs(i - 1, j);
        stack_.pop_back();
      }
    }
    for (std::size_t p : node.preds) {
      if (dp_.at(i, p) + 1 == c) {
        stack_.push_back({ActionKind::insert, j});
        dfs(i, p);
        stack_.pop_back();
      }
    }
  }

  const UnrolledDag& dag_;
  const DpMatrices& dp_;
  SymbolView value_;
  std::vector<Step> stack_;
  std::vector<std::vector<Step>> paths_;
};

bool alnum_symbol(Symbol s) { return is_alnum(s) || is_mask(s); }

EditAction plain_action(const UnrolledDag& dag, const Step& step, SymbolView value, std::size_t pos) {
  EditAction a;
  a.kind = step.kind;
  if (step.kind == ActionKind::remove) {
    a.consumed = 1;
    a.cost = 1;
    return a;
  }
  const auto& node = dag.nodes[step.node];
  if (step.kind == ActionKind::match) {
    a.emit = EmitKind::symbol;
    a.symbol = value[pos];
    a.consumed = 1;
    a.width = 1;
    return a;
  }
  a.consumed = step.kind == ActionKind::substitute ? 1 : 0;
  a.width = 1;
  a.cost = 1;
  switch (node.label.kind) {
    case LabelKind::symbol:
      a.emit = EmitKind::symbol;
      a.symbol = node.label.symbol;
      if (is_mask(a.symbol)) a.slot = dag.slot_of(step.node);
      break;
    case LabelKind::char_class:
      a.emit = EmitKind::char_class;
      a.char_class = node.label.char_class;
      a.slot = dag.slot_of(step.node);
      break;
    case LabelKind::symbol_set:
      a.emit = EmitKind::symbol_set;
      a.set = node.label.set;
      a.slot = dag.slot_of(step.node);
      break;
  }
  return a;
}

EditProgram collapse(const UnrolledDag& dag, const std::vector<Step>& steps, SymbolView value, int& first_edit) {
  EditProgram prog;
  std::size_t pos = 0;
  first_edit = -1;
  auto note_edit = [&](std::size_t at) {
    if (first_edit < 0) first_edit = static_cast<int>(at);
  };
  for (std::size_t k = 0; k < steps.size();) {
    const Step& s = steps[k];
    const int instance = s.kind == ActionKind::remove ? -1 : dag.nodes[s.node].instance;
    if (instance >= 0) {
      std::size_t end = k;
      for (std::size_t m = k + 1; m < steps.size(); ++m) {
        if (steps[m].kind == ActionKind::remove) continue;
        if (dag.nodes[steps[m].node].instance != instance) break;
        end = m;
      }
      bool any_edit = false;
      for (std::size_t m = k; m <= end; ++m) any_edit |= steps[m].kind != ActionKind::match;
      if (any_edit) {
        EditAction a;
        a.emit = EmitKind::alternatives;
        a.alternatives = dag.instance_alternatives[static_cast<std::size_t>(instance)];
        a.slot = dag.instance_slots[static_cast<std::size_t>(instance)];
        note_edit(pos);
        for (std::size_t m = k; m <= end; ++m) {
          const auto kind = steps[m].kind;
          bool alnum = false;
          if (kind != ActionKind::insert) {
            alnum |= alnum_symbol(value[pos]);
            ++a.consumed;
            ++pos;
          }
          if (kind != ActionKind::remove) {
            ++a.width;
            alnum |= dag.nodes[steps[m].node].label.may_emit_alnum();
          }
          if (kind == ActionKind::match) continue;
          ++a.cost;
          prog.alnum_edits += alnum ? 1 : 0;
        }
        a.kind = a.consumed > 0 ? ActionKind::substitute : ActionKind::insert;
        prog.cost += a.cost;
        prog.actions.push_back(std::move(a));
        k = end + 1;
        continue;
      }
      for (std::size_t m = k; m <= end; ++m) {
        auto a = plain_action(dag, steps[m], value, pos);
        if (a.kind != ActionKind::match) {
          note_edit(pos);
          const bool alnum = (a.consumed && alnum_symbol(value[pos])) ||
                             (a.kind != ActionKind::remove && dag.nodes[steps[m].node].label.may_emit_alnum());
          prog.alnum_edits += alnum ? 1 : 0;
        }
        pos += a.consumed;
        prog.cost += a.cost;
        prog.actions.push_back(std::move(a));
      }
      k = end + 1;
      continue;
    }
    auto a = plain_action(dag, s, value, pos);
    if (a.kind != ActionKind::match) {
      note_edit(pos);
      const bool alnum = (a.consumed && alnum_symbol(value[pos])) ||
                         (a.kind != ActionKind::remove && dag.nodes[s.node].label.may_emit_alnum());
      prog.alnum_edits += alnum ? 1 : 0;
    }
    pos += a.consumed;
    prog.cost += a.cost;
    prog.actions.push_back(std::move(a));
    ++k;
  }
  return prog;
}

std::string identity_key(const EditProgram& p) {
  std::string key = to_shorthand(p);
  for (const auto& a : p.actions) {
    key += '|';
    key += std::to_string(a.consumed);
    key += a.slot;
  }
  return key;
}

}  // namespace

std::vector<EditProgram> min_edit_programs(const UnrolledDag& dag, SymbolView value, std::size_t max_programs) {
  const DpMatrices dp = fill_dp(dag, value);
  const auto target = best_cost(dag, dp);
  if (!target) return {};
  Enumerator e(dag, dp, value);
  const auto paths = e.run(*target);

  struct Ranked {
    EditProgram program;
    int first_edit;
    std::string text;
  };
  std::vector<Ranked> ranked;
  std::set<std::string> seen;
  for (const auto& path : paths) {
    Ranked r;
    r.program = collapse(dag, path, value, r.first_edit);
    if (!seen.insert(identity_key(r.program)).second) continue;
    r.text = to_shorthand(r.program);
    ranked.push_back(std::move(r));
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.program.alnum_edits != b.program.alnum_edits) return a.program.alnum_edits < b.program.alnum_edits;
    if (a.first_edit != b.first_edit) return a.first_edit > b.first_edit;
    return a.text < b.text;
  });
  std::vector<EditProgram> out;
  for (auto& r : ranked) {
    if (out.size() >= max_programs) break;
    out.push_back(std::move(r.program));
  }
  return out;
}

ProgramSearch search_programs(const Pattern& pattern, SymbolView value, std::size_t max_programs) {
  ProgramSearch s;
  s.dag = unroll(pattern.root, value.size());
  s.programs = min_edit_programs(s.dag, value, max_programs);
  if (s.programs.empty()) {
    s.extra_depth = 1;
    s.dag = unroll(pattern.root, value.size(), 1);
    s.programs = min_edit_programs(s.dag, value, max_programs);
  }
  for (auto& p : s.programs) p.pattern_id = pattern.id;
  return s;
}

std::optional<std::vector<std::size_t>> align(const UnrolledDag& dag, SymbolView value) {
  const DpMatrices dp = fill_dp(dag, value);
  const std::size_t n = value.size();
  std::size_t j = dp.cols;
  for (std::size_t c = 0; c < dp.cols; ++c) {
    if (dag.nodes[c].accepting && dp.at(n, c) == 0) {
      j = c;
      break;
    }
  }
  if (j == dp.cols) return std::nullopt;
  std::vector<std::size_t> nodes(n);
  for (std::size_t i = n; i > 0; --i) {
    nodes[i - 1] = j;
    std::size_t next = dp.cols;
    for (std::size_t p : dag.nodes[j].preds) {
      if (dp.at(i - 1, p) == 0) {
        next = p;
        break;
      }
    }
    if (next == dp.cols) return std::nullopt;
    j = next;
  }
  return nodes;
}

}  // namespace strfix
