#include "strfix/concretizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "strfix/ranker.hpp"

namespace strfix {

namespace {

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t symbol_length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string_view template_name(PredicateTemplate t) {
  switch (t) {
    case PredicateTemplate::equals: return "equals";
    case PredicateTemplate::contains: return "contains";
    case PredicateTemplate::starts_with: return "startsWith";
    case PredicateTemplate::ends_with: return "endsWith";
    case PredicateTemplate::length: return "length";
    case PredicateTemplate::has_digits: return "hasDigits";
    case PredicateTemplate::is_num: return "isNum";
    case PredicateTemplate::is_error: return "isError";
    case PredicateTemplate::is_formula: return "isFormula";
    case PredicateTemplate::is_logical: return "isLogical";
    case PredicateTemplate::is_na: return "isNA";
    case PredicateTemplate::is_text: return "isText";
  }
  return "?";
}

}  // namespace

bool Predicate::evaluate(const CellValue& cell) const {
  const std::string& v = cell.raw;
  switch (tmpl) {
    case PredicateTemplate::equals: return !cell.is_na() && v == text;
    case PredicateTemplate::contains: return !cell.is_na() && v.find(text) != std::string::npos;
    case PredicateTemplate::starts_with: return !cell.is_na() && v.compare(0, text.size(), text) == 0;
    case PredicateTemplate::ends_with:
      return !cell.is_na() && v.size() >= text.size() && v.compare(v.size() - text.size(), text.size(), text) == 0;
    case PredicateTemplate::length: return !cell.is_na() && symbol_length(v) == length;
    case PredicateTemplate::has_digits: return !cell.is_na() && has_digit(v);
    case PredicateTemplate::is_num: return cell.kind == CellKind::numeric;
    case PredicateTemplate::is_error: return cell.kind == CellKind::error;
    case PredicateTemplate::is_formula: return false;
    case PredicateTemplate::is_logical: return cell.kind == CellKind::logical;
    case PredicateTemplate::is_na: return cell.is_na();
    case PredicateTemplate::is_text: return cell.kind == CellKind::text;
  }
  return false;
}

std::string Predicate::describe() const {
  std::string out(template_name(tmpl));
  out += "(" + column_name;
  switch (tmpl) {
    case PredicateTemplate::equals:
    case PredicateTemplate::contains:
    case PredicateTemplate::starts_with:
    case PredicateTemplate::ends_with: out += ", \"" + text + "\""; break;
    case PredicateTemplate::length: out += ", " + std::to_string(length); break;
    default: break;
  }
  return out + ")";
}

std::vector<std::string> split_tokens(std::string_view value) {
  const SymbolString s = decode_utf8(value);
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto emit = [&](std::size_t b, std::size_t e) {
    if (e <= b) return;
    auto t = encode_utf8(SymbolView(s).substr(b, e - b));
    if (seen.insert(t).second) out.push_back(std::move(t));
  };
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    bool cut = i == s.size();
    if (!cut) {
      const Symbol a = s[i - 1], b = s[i];
      if (is_alnum(a) != is_alnum(b)) cut = true;
      else if (is_alnum(a)) cut = (is_digit(a) != is_digit(b)) || (is_lower(a) && is_upper(b));
    }
    if (cut) {
      emit(start, i);
      start = i;
    }
  }
  return out;
}

FeatureSet FeatureSet::build(const Table& table, const FeatureOptions& options) {
  FeatureSet fs;
  fs.rows_ = table.row_count();
  const std::size_t words = (fs.rows_ + 63) / 64;
  std::set<std::vector<std::uint64_t>> kept;

  for (std::size_t ci = 0; ci < table.column_count(); ++ci) {
    const auto& col = table.column(ci);
    std::map<std::string, std::size_t> value_counts, token_counts;
    std::map<std::size_t, std::size_t> length_counts;
    for (const auto& cell : col.values) {
      if (cell.is_na()) continue;
      value_counts[cell.raw] += 1;
      length_counts[symbol_length(cell.raw)] += 1;
      std::set<std::string> constants{cell.raw};
      for (auto& t : split_tokens(cell.raw)) constants.insert(std::move(t));
      for (const auto& c : constants) {
        if (!c.empty()) token_counts[c] += 1;
      }
    }
    auto top = [](const auto& counts, std::size_t limit) {
      std::vector<std::pair<typename std::decay_t<decltype(counts)>::key_type, std::size_t>> v(counts.begin(),
                                                                                              counts.end());
      std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      if (v.size() > limit) v.resize(limit);
      return v;
    };

    std::vector<Predicate> candidates;
    auto add = [&](PredicateTemplate t, std::string text = {}, std::size_t length = 0) {
      Predicate p;
      p.tmpl = t;
      p.column = ci;
      p.column_name = col.name;
      p.text = std::move(text);
      p.length = length;
      candidates.push_back(std::move(p));
    };
    for (const auto& [v, n] : top(value_counts, options.constants_per_template)) add(PredicateTemplate::equals, v);
    for (const auto& [t, n] : top(token_counts, options.constants_per_template)) {
      add(PredicateTemplate::contains, t);
      add(PredicateTemplate::starts_with, t);
      add(PredicateTemplate::ends_with, t);
    }
    for (const auto& [len, n] : top(length_counts, options.length_constants)) add(PredicateTemplate::length, {}, len);
    for (auto t : {PredicateTemplate::has_digits, PredicateTemplate::is_num, PredicateTemplate::is_error,
                   PredicateTemplate::is_formula, PredicateTemplate::is_logical, PredicateTemplate::is_na,
                   PredicateTemplate::is_text}) {
      add(t);
    }

    for (auto& p : candidates) {
      std::vector<std::uint64_t> bits(words, 0);
      std::size_t ones = 0;
      for (std::size_t r = 0; r < fs.rows_; ++r) {
        if (p.evaluate(col.values[r])) {
          bits[r / 64] |= std::uint64_t{1} << (r % 64);
          ++ones;
        }
      }
      if (ones == 0 || ones == fs.rows_) continue;
      // Identical columns of truth values within one column carry nothing new.
      std::vector<std::uint64_t> key = bits;
      key.push_back(ci);
      if (!kept.insert(std::move(key)).second) continue;
      fs.predicates_.push_back(std::move(p));
      fs.bits_.push_back(std::move(bits));
    }
  }
  return fs;
}

std::vector<bool> FeatureSet::row_features(std::size_t row) const {
  std::vector<bool> out(predicates_.size());
  for (std::size_t f = 0; f < predicates_.size(); ++f) out[f] = value(f, row);
  return out;
}

const std::string& ConstraintTree::predict(const FeatureSet& features, std::size_t row) const {
  int at = 0;
  while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(at)];
    at = features.value(static_cast<std::size_t>(n.feature), row) ? n.when_true : n.when_false;
  }
  return nodes[static_cast<std::size_t>(at)].label;
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits and_bits(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

Bits and_not_bits(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & ~b[i];
  return out;
}

std::size_t count_and(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

class TreeSearch {
 public:
  TreeSearch(std::vector<Bits> features, std::vector<Bits> labels, Bits all)
      : features_(std::move(features)), labels_(std::move(labels)), all_(std::move(all)) {}

  // Majority label and its count within `subset`.
  std::pair<std::size_t, std::size_t> leaf(const Bits& subset) const {
    std::size_t best = 0, label = 0;
    for (std::size_t l = 0; l < labels_.size(); ++l) {
      const std::size_t n = count_and(subset, labels_[l]);
      if (n > best) {
        best = n;
        label = l;
      }
    }
    return {label, best};
  }

  struct Split {
    int feature = -1;
    std::size_t correct = 0;
  };

  Split best_split(const Bits& subset) const {
    Split best;
    for (std::size_t f = 0; f < features_.size(); ++f) {
      const std::size_t c = leaf(and_bits(subset, features_[f])).second + leaf(and_not_bits(subset, features_[f])).second;
      if (best.feature < 0 || c > best.correct) best = {static_cast<int>(f), c};
    }
    return best;
  }

  // shape: 0 leaf, 1 stump, 2 split on the true side, 3 split on the false
  // side, 4 both sides split.
  struct Choice {
    int shape = 0;
    int root = -1, left = -1, right = -1;
    std::size_t correct = 0;
  };

  Choice best_of_size(int nodes) const {
    Choice best;
    if (nodes == 1) {
      best.correct = leaf(all_).second;
      return best;
    }
    for (std::size_t f = 0; f < features_.size(); ++f) {
      const Bits yes = and_bits(all_, features_[f]);
      const Bits no = and_not_bits(all_, features_[f]);
      const std::size_t leaf_yes = leaf(yes).second, leaf_no = leaf(no).second;
      auto consider = [&](Choice c) {
        if (best.root < 0 || c.correct > best.correct) best = c;
      };
      const int fi = static_cast<int>(f);
      if (nodes == 3) {
        consider({1, fi, -1, -1, leaf_yes + leaf_no});
      } else if (nodes == 5) {
        const Split sy = best_split(yes), sn = best_split(no);
        if (sy.feature >= 0) consider({2, fi, sy.feature, -1, sy.correct + leaf_no});
        if (sn.feature >= 0) consider({3, fi, -1, sn.feature, leaf_yes + sn.correct});
      } else {
        const Split sy = best_split(yes), sn = best_split(no);
        if (sy.feature >= 0 && sn.feature >= 0) consider({4, fi, sy.feature, sn.feature, sy.correct + sn.correct});
      }
    }
    return best;
  }

  ConstraintTree materialize(const Choice& c, const std::vector<std::string>& label_names,
                             const std::vector<std::size_t>& feature_ids) const {
    ConstraintTree t;
    auto add_leaf = [&](const Bits& subset) {
      ConstraintTree::Node n;
      n.label = label_names[leaf(subset).first];
      t.nodes.push_back(n);
      return static_cast<int>(t.nodes.size() - 1);
    };
    auto add_split = [&](int local, const Bits& subset, auto&& yes_fn, auto&& no_fn) {
      const int at = static_cast<int>(t.nodes.size());
      t.nodes.emplace_back();
      t.nodes[static_cast<std::size_t>(at)].feature = static_cast<int>(feature_ids[static_cast<std::size_t>(local)]);
      const Bits& fb = features_[static_cast<std::size_t>(local)];
      const int y = yes_fn(and_bits(subset, fb));
      const int n = no_fn(and_not_bits(subset, fb));
      t.nodes[static_cast<std::size_t>(at)].when_true = y;
      t.nodes[static_cast<std::size_t>(at)].when_false = n;
      return at;
    };
    auto leaf_fn = [&](const Bits& s) { return add_leaf(s); };
    auto split_fn = [&](int local) {
      return [&, local](const Bits& s) { return add_split(local, s, leaf_fn, leaf_fn); };
    };
    switch (c.shape) {
      case 0: add_leaf(all_); t.depth = 0; break;
      case 1: add_split(c.root, all_, leaf_fn, leaf_fn); t.depth = 1; break;
      case 2: add_split(c.root, all_, split_fn(c.left), leaf_fn); t.depth = 2; break;
      case 3: add_split(c.root, all_, leaf_fn, split_fn(c.right)); t.depth = 2; break;
      default: add_split(c.root, all_, split_fn(c.left), split_fn(c.right)); t.depth = 2; break;
    }
    t.node_count = static_cast<int>(t.nodes.size());
    return t;
  }

 private:
  std::vector<Bits> features_;
  std::vector<Bits> labels_;
  Bits all_;
};

}  // namespace

std::optional<ConstraintTree> learn_tree(std::span<const TrainingExample> examples, const FeatureSet& features,
                                         const TreeOptions& options) {
  if (examples.size() < 2) return std::nullopt;
  if (!(options.alpha > 0.0 && options.alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
  const std::size_t n = examples.size();
  const std::size_t words = (n + 63) / 64;

  std::vector<std::string> label_names;
  for (const auto& e : examples) label_names.push_back(e.label);
  std::sort(label_names.begin(), label_names.end());
  label_names.erase(std::unique(label_names.begin(), label_names.end()), label_names.end());
  std::vector<Bits> label_bits(label_names.size(), Bits(words, 0));
  std::vector<std::size_t> label_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    label_of[i] = static_cast<std::size_t>(
        std::lower_bound(label_names.begin(), label_names.end(), examples[i].label) - label_names.begin());
    label_bits[label_of[i]][i / 64] |= std::uint64_t{1} << (i % 64);
  }
  Bits all(words, 0);
  for (std::size_t i = 0; i < n; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);

  struct Scored {
    std::size_t id;
    double mi;
  };
  std::vector<Scored> scored;
  const double total = static_cast<double>(n);
  for (std::size_t f = 0; f < features.size(); ++f) {
    if (options.target_column && features.predicates()[f].column == *options.target_column) continue;
    std::vector<std::size_t> on(label_names.size(), 0), off(label_names.size(), 0);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (features.value(f, examples[i].row)) {
        ++on[label_of[i]];
        ++ones;
      } else {
        ++off[label_of[i]];
      }
    }
    if (ones == 0 || ones == n) continue;
    double mi = 0.0;
    for (std::size_t l = 0; l < label_names.size(); ++l) {
      const double pl = static_cast<double>(on[l] + off[l]) / total;
      for (auto [count, side] : {std::pair{on[l], ones}, std::pair{off[l], n - ones}}) {
        if (count == 0) continue;
        const double joint = static_cast<double>(count) / total;
        mi += joint * std::log(joint / (pl * static_cast<double>(side) / total));
      }
    }
    scored.push_back({f, mi});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) { return a.mi > b.mi + 1e-12; });
  if (scored.size() > options.max_features) scored.resize(options.max_features);

  std::vector<Bits> feature_bits;
  std::vector<std::size_t> feature_ids;
  for (const auto& s : scored) {
    Bits b(words, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (features.value(s.id, examples[i].row)) b[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    feature_bits.push_back(std::move(b));
    feature_ids.push_back(s.id);
  }

  TreeSearch search(std::move(feature_bits), std::move(label_bits), std::move(all));
  for (int size : {1, 3, 5, 7}) {
    const auto choice = search.best_of_size(size);
    if (size > 1 && choice.root < 0) break;
    const double accuracy = static_cast<double>(choice.correct) / total;
    if (accuracy + 1e-12 >= options.alpha) {
      auto tree = search.materialize(choice, label_names, feature_ids);
      tree.accuracy = accuracy;
      tree.examples = n;
      return tree;
    }
  }
  return std::nullopt;
}

std::vector<std::string> extract_slots(const UnrolledDag& dag) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t j = 1; j < dag.nodes.size(); ++j) {
    const auto& n = dag.nodes[j];
    const bool slot = n.instance >= 0 || n.label.kind != LabelKind::symbol || is_mask(n.label.symbol);
    if (!slot) continue;
    auto key = dag.slot_of(j);
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  return out;
}

namespace {

bool parse_slot_key(const std::string& key, int& node, std::vector<int>& copies) {
  copies.clear();
  const auto at = key.find('@');
  try {
    node = std::stoi(key.substr(0, at));
    if (at == std::string::npos) return true;
    std::size_t pos = at + 1;
    while (pos <= key.size()) {
      const auto dot = key.find('.', pos);
      copies.push_back(std::stoi(key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos)));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

PatternConcretizer::PatternConcretizer(const Pattern& pattern, const FeatureSet& features,
                                       std::span<const TrainingRow> rows, std::optional<std::size_t> target_column,
                                       ConcretizerOptions options)
    : features_(features), target_column_(target_column), options_(options) {
  std::unordered_map<std::size_t, UnrolledDag> dags;
  for (const auto& tr : rows) {
    auto it = dags.find(tr.value.size());
    if (it == dags.end()) it = dags.emplace(tr.value.size(), unroll(pattern.root, tr.value.size())).first;
    const UnrolledDag& dag = it->second;
    const auto path = align(dag, tr.value);
    if (!path) continue;
    std::size_t mask_seen = 0;
    for (std::size_t i = 0; i < path->size(); ++i) {
      const auto& node = dag.nodes[(*path)[i]];
      std::optional<std::string> label;
      if (node.instance >= 0) {
        if (node.offset == 0) {
          label = encode_utf8(
              dag.instance_alternatives[static_cast<std::size_t>(node.instance)][static_cast<std::size_t>(node.alternative)]);
        }
      } else if (node.label.kind != LabelKind::symbol) {
        label = encode_utf8(SymbolView(tr.value).substr(i, 1));
      } else if (is_mask(node.label.symbol)) {
        if (mask_seen < tr.mask_texts.size()) label = tr.mask_texts[mask_seen];
      }
      if (is_mask(tr.value[i])) ++mask_seen;
      if (!label) continue;
      const auto key = dag.slot_of((*path)[i]);
      auto& model = slots_[key];
      if (model.key.empty()) {
        model.key = key;
        model.pattern_node = node.pattern_node;
        model.copies = node.copies;
      }
      model.examples.push_back({tr.row, *label});
    }
  }
  for (auto& [key, model] : slots_) {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : model.examples) counts[e.label] += 1;
    model.frequencies.assign(counts.begin(), counts.end());
    std::stable_sort(model.frequencies.begin(), model.frequencies.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
  }
}

SlotModel* PatternConcretizer::model_for(const std::string& key) {
  auto it = slots_.find(key);
  if (it != slots_.end()) return &it->second;
  int node = 0;
  std::vector<int> copies;
  if (!parse_slot_key(key, node, copies)) return nullptr;
  // A copy index past anything seen in training reuses the last one seen.
  SlotModel* below = nullptr;
  SlotModel* above = nullptr;
  for (auto& [k, m] : slots_) {
    if (m.pattern_node != node || m.copies.size() != copies.size()) continue;
    if (m.copies <= copies) {
      if (!below || below->copies < m.copies) below = &m;
    } else if (!above || m.copies < above->copies) {
      above = &m;
    }
  }
  return below ? below : above;
}

const std::optional<ConstraintTree>& PatternConcretizer::tree_for(const std::string& key) {
  static const std::optional<ConstraintTree> kNone;
  std::lock_guard lock(mutex_);
  SlotModel* m = model_for(key);
  if (!m) return kNone;
  if (!m->tree_learned) {
    TreeOptions to;
    to.alpha = options_.alpha;
    to.max_features = options_.max_features;
    to.target_column = target_column_;
    m->tree = learn_tree(m->examples, features_, to);
    m->tree_learned = true;
  }
  return m->tree;
}

namespace {

bool fits(const EditAction& a, const std::string& label) {
  const SymbolString s = decode_utf8(label);
  switch (a.emit) {
    case EmitKind::char_class: return s.size() == 1 && class_contains(a.char_class, s[0]);
    case EmitKind::symbol_set: return s.size() == 1 && a.set.find(s[0]) != SymbolString::npos;
    case EmitKind::alternatives:
      return std::find(a.alternatives.begin(), a.alternatives.end(), s) != a.alternatives.end();
    default: return true;
  }
}

}  // namespace

std::vector<std::string> PatternConcretizer::choices(const EditAction& action, std::size_t row, SymbolView consumed,
                                                     bool& by_tree) {
  by_tree = false;
  std::vector<std::string> out;
  if (options_.learned) {
    const auto& tree = tree_for(action.slot);
    if (tree) {
      const auto& label = tree->predict(features_, row);
      if (fits(action, label)) {
        by_tree = true;
        return {label};
      }
    }
  }
  SlotModel* m;
  {
    std::lock_guard lock(mutex_);
    m = model_for(action.slot);
  }
  if (!m) return out;
  const std::size_t limit = options_.learned ? options_.fallback_top : options_.frequency_cap;
  for (const auto& [label, count] : m->frequencies) {
    if (out.size() >= limit) break;
    if (fits(action, label)) out.push_back(label);
  }
  // The observed value nearest to what the edit replaces, when it is not
  // already among the most frequent.
  if (options_.learned && !consumed.empty() && m->frequencies.size() > out.size()) {
    const std::string* best = nullptr;
    int best_distance = 0;
    for (const auto& [label, count] : m->frequencies) {
      if (!fits(action, label)) continue;
      const int d = levenshtein(SymbolView(decode_utf8(label)), consumed);
      if (!best || d < best_distance) {
        best = &label;
        best_distance = d;
      }
    }
    if (best && best_distance < static_cast<int>(consumed.size()) &&
        std::find(out.begin(), out.end(), *best) == out.end()) {
      out.push_back(*best);
    }
  }
  return out;
}

std::vector<ConcreteProgram> PatternConcretizer::concretize(const EditProgram& program, std::size_t row,
                                                            SymbolView source, std::string* reason) {
  struct Pending {
    std::size_t action;
    std::vector<std::string> options;
    bool by_tree;
  };
  std::vector<Pending> pending;
  const auto& actions = program.actions;
  std::vector<std::size_t> offset(actions.size() + 1, 0);
  for (std::size_t i = 0; i < actions.size(); ++i) offset[i + 1] = offset[i] + actions[i].consumed;
  for (std::size_t i = 0; i < program.actions.size(); ++i) {
    const auto& a = program.actions[i];
    if (a.kind == ActionKind::match || a.kind == ActionKind::remove || a.slot.empty()) continue;
    // Removed text next to an insert is what the insert stands in for.
    std::size_t lo = i, hi = i + 1;
    while (lo > 0 && actions[lo - 1].kind == ActionKind::remove) --lo;
    while (hi < actions.size() && actions[hi].kind == ActionKind::remove) ++hi;
    SymbolView consumed;
    if (offset[hi] <= source.size()) consumed = source.substr(offset[lo], offset[hi] - offset[lo]);
    Pending p{i, {}, false};
    p.options = choices(a, row, consumed, p.by_tree);
    if (p.options.empty()) {
      if (a.is_abstract()) {
        if (reason) *reason = "no-observed-values-for-slot " + a.slot;
        return {};
      }
      continue;
    }
    pending.push_back(std::move(p));
  }

  std::vector<ConcreteProgram> out;
  std::vector<std::size_t> pick(pending.size(), 0);
  while (out.size() < options_.max_candidates) {
    ConcreteProgram cp;
    cp.program = program;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      auto& a = cp.program.actions[pending[k].action];
      const std::string& choice = pending[k].options[pick[k]];
      cp.decided_by_tree[a.slot] = pending[k].by_tree;
      switch (a.emit) {
        case EmitKind::char_class:
        case EmitKind::symbol_set:
          a.emit = EmitKind::symbol;
          a.symbol = decode_utf8(choice)[0];
          break;
        case EmitKind::alternatives:
          a.emit = EmitKind::text;
          a.text = decode_utf8(choice);
          break;
        default: a.fill = choice; break;
      }
    }
    out.push_back(std::move(cp));
    std::size_t k = pending.size();
    while (k > 0) {
      --k;
      if (++pick[k] < pending[k].options.size()) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
    if (pending.empty()) break;
  }
  return out;
}

}  // namespace strfix
