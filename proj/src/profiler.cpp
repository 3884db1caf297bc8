#include "strfix/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace strfix {

namespace {

// Markers outside the Unicode range; they never collide with value symbols.
constexpr Symbol kRunMarker = 0x110000;
constexpr Symbol kEmptySegment = 0x110001;
constexpr Symbol kSegment = 0x110002;
constexpr Symbol kShapeBase = 0x110010;

enum class RunShape : std::uint8_t { digit, upper, lower, capitalized, mixed, space };

struct Token {
  bool run = false;
  RunShape shape = RunShape::digit;
  SymbolString text;
};

bool is_capitalized(SymbolView t) {
  if (t.size() < 2 || !is_upper(t[0])) return false;
  return std::all_of(t.begin() + 1, t.end(), [](Symbol s) { return is_lower(s); });
}

std::vector<Token> tokenize(SymbolView v) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < v.size()) {
    const Symbol s = v[i];
    auto take_run = [&](auto pred) {
      std::size_t j = i;
      while (j < v.size() && pred(v[j])) ++j;
      SymbolString text(v.substr(i, j - i));
      i = j;
      return text;
    };
    Token t;
    if (is_letter(s)) {
      t.run = true;
      t.text = take_run([](Symbol c) { return is_letter(c); });
      const bool all_upper = std::all_of(t.text.begin(), t.text.end(), is_upper);
      const bool all_lower = std::all_of(t.text.begin(), t.text.end(), is_lower);
      t.shape = all_upper   ? RunShape::upper
                : all_lower ? RunShape::lower
                : is_capitalized(t.text) ? RunShape::capitalized
                                         : RunShape::mixed;
    } else if (is_digit(s)) {
      t.run = true;
      t.shape = RunShape::digit;
      t.text = take_run([](Symbol c) { return is_digit(c); });
    } else if (s == U' ') {
      t.run = true;
      t.shape = RunShape::space;
      t.text = take_run([](Symbol c) { return c == U' '; });
    } else {
      t.text = SymbolString(1, s);
      ++i;
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct Member {
  SymbolString value;
  std::size_t count = 0;
  std::vector<Token> tokens;
  SymbolString l1_key;
  SymbolString flat_key;
  std::size_t unit_len = 0;
  SymbolString skeleton_key;
};

Member describe(SymbolString value) {
  Member m;
  m.tokens = tokenize(value);
  m.value = std::move(value);
  for (const auto& t : m.tokens) {
    if (t.run) {
      m.l1_key.push_back(kShapeBase + static_cast<Symbol>(t.shape));
      m.l1_key.push_back(static_cast<Symbol>(t.text.size()));
      m.flat_key.push_back(kRunMarker);
    } else {
      m.l1_key.push_back(t.text[0]);
      m.flat_key.push_back(t.text[0]);
    }
  }
  const std::size_t n = m.flat_key.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = m.flat_key[i] == m.flat_key[i % p];
    if (!periodic) continue;
    const bool has_fixed = std::any_of(m.flat_key.begin(), m.flat_key.begin() + p,
                                       [](Symbol s) { return s != kRunMarker; });
    m.unit_len = has_fixed ? p : 0;
    break;
  }
  bool segment = false;
  for (const auto& t : m.tokens) {
    if (t.run) {
      segment = true;
      continue;
    }
    m.skeleton_key.push_back(segment ? kSegment : kEmptySegment);
    m.skeleton_key.push_back(t.text[0]);
    segment = false;
  }
  m.skeleton_key.push_back(segment ? kSegment : kEmptySegment);
  return m;
}

enum class Level { flat = 0, folded = 1, skeleton = 2 };
constexpr int kKeyedLevels = 3;

struct Rendered {
  PatternNode root;
  double size = 0;
  double data_bits = 0;
  std::string text;
};

struct Cluster {
  std::vector<std::size_t> members;
  std::size_t total = 0;
  Level level = Level::flat;
  std::optional<SymbolString> keys[kKeyedLevels];
  bool has_empty = false;
  Rendered rendered;
  double cost = 0;
};

double pattern_size(const PatternNode& n) {
  switch (n.kind) {
    case NodeKind::literal:
    case NodeKind::mask:
    case NodeKind::char_class:
      return 1;
    case NodeKind::disjunction: {
      double s = 1;
      for (const auto& a : n.alternatives) s += static_cast<double>(a.size());
      return s;
    }
    case NodeKind::group:
    case NodeKind::sequence: {
      double s = n.kind == NodeKind::group ? 1 : 0;
      for (const auto& c : n.children) s += pattern_size(c);
      return s;
    }
  }
  return 0;
}

using Occurrences = std::vector<std::pair<SymbolView, std::size_t>>;

class Renderer {
 public:
  Renderer(const std::vector<Member>& members, const ProfilerOptions& options)
      : members_(members), options_(options) {}

  Rendered render(Level level, const std::vector<std::size_t>& ids) const {
    Rendered r;
    std::vector<PatternNode> items;
    switch (level) {
      case Level::flat: items = render_flat(ids, r.data_bits); break;
      case Level::folded: items = render_folded(ids, r.data_bits); break;
      case Level::skeleton: items = render_skeleton(ids, r.data_bits); break;
    }
    r.root = PatternNode::sequence(std::move(items));
    r.size = pattern_size(r.root);
    r.text = to_text(r.root);
    return r;
  }

 private:
  std::vector<PatternNode> render_run(const Occurrences& occ, double& bits) const {
    std::map<SymbolString, std::size_t> texts;
    std::size_t total = 0;
    for (const auto& [t, c] : occ) {
      texts[SymbolString(t)] += c;
      total += c;
    }
    std::vector<PatternNode> out;
    if (texts.size() == 1) {
      for (Symbol s : texts.begin()->first) out.push_back(PatternNode::literal(s));
      return out;
    }
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    for (const auto& [t, c] : texts) min_count = std::min(min_count, c);
    if (texts.size() <= options_.max_disjunction && min_count >= 2) {
      std::vector<SymbolString> alts;
      for (const auto& [t, c] : texts) alts.push_back(t);
      bits += static_cast<double>(total) * std::log2(static_cast<double>(texts.size()));
      out.push_back(PatternNode::disjunction(std::move(alts)));
      return out;
    }

    bool digit = false, upper = false, lower = false, space = false, binary = true, cap = true;
    std::size_t min_len = std::numeric_limits<std::size_t>::max(), max_len = 0;
    for (const auto& [t, c] : texts) {
      min_len = std::min(min_len, t.size());
      max_len = std::max(max_len, t.size());
      cap = cap && is_capitalized(t);
      for (Symbol s : t) {
        digit |= is_digit(s);
        upper |= is_upper(s);
        lower |= is_lower(s);
        space |= s == U' ';
        binary = binary && (s == U'0' || s == U'1');
      }
    }
    const bool varying = min_len != max_len;
    double char_bits = 0;
    for (const auto& [t, c] : texts) char_bits += static_cast<double>(c * t.size());

    auto repeat = [&](CharClass cls, std::size_t len) {
      if (!varying) {
        for (std::size_t i = 0; i < len; ++i) out.push_back(PatternNode::cls(cls));
      } else {
        out.push_back(PatternNode::group({PatternNode::cls(cls)}, Quantifier::one_or_more));
      }
    };

    if (cap) {
      out.push_back(PatternNode::cls(CharClass::upper));
      repeat(CharClass::lower, min_len - 1);
      bits += char_bits * std::log2(26.0);
    } else {
      CharClass cls = CharClass::alnum_space;
      const bool letters = upper || lower;
      if (space && !digit && !letters) {
        cls = CharClass::space;
      } else if (space) {
        cls = CharClass::alnum_space;
      } else if (digit && letters) {
        cls = CharClass::alnum;
      } else if (digit) {
        cls = binary && total >= 4 ? CharClass::binary01 : CharClass::digit;
      } else if (upper && lower) {
        cls = CharClass::letter;
      } else if (upper) {
        cls = CharClass::upper;
      } else {
        cls = CharClass::lower;
      }
      repeat(cls, min_len);
      bits += char_bits * std::log2(static_cast<double>(std::max<std::size_t>(2, class_size(cls))));
    }
    if (varying) bits += 2.0 * static_cast<double>(total);
    return out;
  }

  static PatternNode fixed_node(Symbol s) {
    return is_mask(s) ? PatternNode::mask(s) : PatternNode::literal(s);
  }

  std::vector<PatternNode> render_positions(const std::vector<std::size_t>& ids, std::size_t width,
                                            bool modulo, double& bits) const {
    const SymbolString& key = members_[ids.front()].flat_key;
    std::vector<PatternNode> items;
    for (std::size_t p = 0; p < width; ++p) {
      if (key[p] != kRunMarker) {
        items.push_back(fixed_node(key[p]));
        continue;
      }
      Occurrences occ;
      for (std::size_t id : ids) {
        const auto& m = members_[id];
        if (modulo) {
          for (std::size_t i = p; i < m.tokens.size(); i += width) occ.emplace_back(m.tokens[i].text, m.count);
        } else {
          occ.emplace_back(m.tokens[p].text, m.count);
        }
      }
      auto nodes = render_run(occ, bits);
      items.insert(items.end(), nodes.begin(), nodes.end());
    }
    return items;
  }

  std::vector<PatternNode> render_flat(const std::vector<std::size_t>& ids, double& bits) const {
    return render_positions(ids, members_[ids.front()].flat_key.size(), false, bits);
  }

  std::vector<PatternNode> render_folded(const std::vector<std::size_t>& ids, double& bits) const {
    const std::size_t unit = members_[ids.front()].unit_len;
    auto body = render_positions(ids, unit, true, bits);
    for (std::size_t id : ids) {
      const auto& m = members_[id];
      const double reps = static_cast<double>(m.tokens.size() / unit);
      bits += static_cast<double>(m.count) * (1.0 + std::log2(reps));
    }
    return {PatternNode::group(std::move(body), Quantifier::one_or_more)};
  }

  std::vector<PatternNode> render_skeleton(const std::vector<std::size_t>& ids, double& bits) const {
    const SymbolString& key = members_[ids.front()].skeleton_key;
    // Segment texts per member, in skeleton order.
    std::vector<std::vector<SymbolString>> segments(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
      SymbolString cur;
      for (const auto& t : members_[ids[k]].tokens) {
        if (t.run) {
          cur += t.text;
        } else {
          segments[k].push_back(cur);
          cur.clear();
        }
      }
      segments[k].push_back(cur);
    }
    std::vector<PatternNode> items;
    std::size_t seg = 0;
    for (Symbol s : key) {
      if (s == kEmptySegment) {
        ++seg;
      } else if (s == kSegment) {
        Occurrences occ;
        for (std::size_t k = 0; k < ids.size(); ++k) occ.emplace_back(segments[k][seg], members_[ids[k]].count);
        auto nodes = render_run(occ, bits);
        items.insert(items.end(), nodes.begin(), nodes.end());
        ++seg;
      } else {
        items.push_back(fixed_node(s));
      }
    }
    return items;
  }

  const std::vector<Member>& members_;
  const ProfilerOptions& options_;
};

std::optional<SymbolString> member_key(const Member& m, int level) {
  switch (level) {
    case 0: return m.flat_key;
    case 1: return m.unit_len ? std::optional<SymbolString>(m.flat_key.substr(0, m.unit_len)) : std::nullopt;
    default: return m.skeleton_key;
  }
}

struct MergeOption {
  bool possible = false;
  double delta = 0;
  Level level = Level::flat;
  Rendered rendered;
};

}  // namespace

std::vector<Pattern> learn_patterns(std::span<const SymbolString> values, const ProfilerOptions& options) {
  if (options.k == 0) throw std::invalid_argument("k must be positive");
  std::vector<Member> members;
  {
    std::unordered_map<SymbolString, std::size_t> index;
    for (const auto& v : values) {
      auto [it, inserted] = index.emplace(v, members.size());
      if (inserted) {
        members.push_back(describe(v));
      }
      members[it->second].count += 1;
    }
  }
  Renderer renderer(members, options);
  // Two-part code: the pattern, plus per value the bits naming its pattern
  // and the bits it needs within it.
  const double n_values = static_cast<double>(values.size());
  auto cost_of = [&](const Rendered& r, std::size_t total) {
    const double t = static_cast<double>(total);
    const double choice = t > 0 ? t * std::log2(n_values / t) : 0.0;
    return 1.0 + r.size + options.lambda * (r.data_bits + choice) / 8.0;
  };

  std::vector<std::optional<Cluster>> clusters;
  {
    std::map<SymbolString, std::size_t> by_l1;
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto [it, inserted] = by_l1.emplace(members[i].l1_key, clusters.size());
      if (inserted) {
        Cluster c;
        for (int l = 0; l < kKeyedLevels; ++l) c.keys[l] = member_key(members[i], l);
        clusters.emplace_back(std::move(c));
      }
      auto& c = *clusters[it->second];
      c.members.push_back(i);
      c.total += members[i].count;
      c.has_empty = c.has_empty || members[i].value.empty();
    }
    for (auto& c : clusters) {
      c->rendered = renderer.render(Level::flat, c->members);
      c->cost = cost_of(c->rendered, c->total);
    }
  }

  auto make_cluster = [&](std::vector<std::size_t> ids) {
    Cluster c;
    const Member& first = members[ids.front()];
    for (int l = 0; l < kKeyedLevels; ++l) c.keys[l] = member_key(first, l);
    for (std::size_t id : ids) {
      c.total += members[id].count;
      c.has_empty = c.has_empty || members[id].value.empty();
    }
    c.members = std::move(ids);
    c.rendered = renderer.render(Level::flat, c.members);
    c.cost = cost_of(c.rendered, c.total);
    return c;
  };

  // Split off members whose text at a categorical run position is rare, so
  // one shuffled value does not widen (North|South) into a class.
  {
    std::vector<std::optional<Cluster>> refined;
    for (auto& c : clusters) {
      const auto& ids = c->members;
      const auto& tokens = members[ids.front()].tokens;
      std::vector<bool> rare(ids.size(), false);
      for (std::size_t p = 0; p < tokens.size(); ++p) {
        if (!tokens[p].run) continue;
        std::map<SymbolString, std::size_t> counts;
        for (std::size_t id : ids) counts[members[id].tokens[p].text] += members[id].count;
        std::size_t frequent = 0, frequent_weight = 0;
        for (const auto& [t, n] : counts) {
          if (n >= 2) {
            ++frequent;
            frequent_weight += n;
          }
        }
        if (frequent == 0 || frequent > options.max_disjunction || 2 * frequent_weight < c->total) continue;
        for (std::size_t k = 0; k < ids.size(); ++k) {
          if (counts[members[ids[k]].tokens[p].text] < 2) rare[k] = true;
        }
      }
      std::vector<std::size_t> core, split;
      for (std::size_t k = 0; k < ids.size(); ++k) (rare[k] ? split : core).push_back(ids[k]);
      if (split.empty() || core.empty()) {
        refined.push_back(std::move(c));
        continue;
      }
      Cluster kept = make_cluster(core);
      std::vector<Cluster> singles;
      double cost = kept.cost;
      for (std::size_t id : split) {
        singles.push_back(make_cluster({id}));
        cost += singles.back().cost;
      }
      if (cost >= c->cost) {
        refined.push_back(std::move(c));
        continue;
      }
      refined.emplace_back(std::move(kept));
      for (auto& single : singles) refined.emplace_back(std::move(single));
    }
    clusters = std::move(refined);
  }

  // A group whose pattern also accepts another group's values is broken into
  // one cluster per value.
  {
    std::vector<bool> overlapping(clusters.size(), false);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (clusters[i]->members.size() == 1) continue;
      Pattern p;
      p.root = clusters[i]->rendered.root;
      const SymbolString& skeleton = members[clusters[i]->members.front()].skeleton_key;
      for (std::size_t j = 0; j < clusters.size() && !overlapping[i]; ++j) {
        if (j == i) continue;
        for (std::size_t id : clusters[j]->members) {
          if (members[id].skeleton_key == skeleton && matches(p, members[id].value)) {
            overlapping[i] = true;
            break;
          }
        }
      }
    }
    std::vector<std::optional<Cluster>> refined;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (!overlapping[i]) {
        refined.push_back(std::move(clusters[i]));
        continue;
      }
      for (std::size_t id : clusters[i]->members) refined.emplace_back(make_cluster({id}));
    }
    clusters = std::move(refined);
  }

  auto plan_merge = [&](const Cluster& a, const Cluster& b) {
    MergeOption opt;
    std::vector<std::size_t> ids = a.members;
    ids.insert(ids.end(), b.members.begin(), b.members.end());
    std::sort(ids.begin(), ids.end());
    const int start = std::max(static_cast<int>(a.level), static_cast<int>(b.level));
    for (int l = start; l < kKeyedLevels; ++l) {
      if (!a.keys[l] || !b.keys[l] || *a.keys[l] != *b.keys[l]) continue;
      opt.possible = true;
      opt.level = static_cast<Level>(l);
      opt.rendered = renderer.render(opt.level, ids);
      opt.delta = cost_of(opt.rendered, a.total + b.total) - a.cost - b.cost;
      break;
    }
    return opt;
  };

  std::map<std::pair<std::size_t, std::size_t>, MergeOption> options_cache;
  auto alive = [&] {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.has_value();
    return n;
  };
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      options_cache[{i, j}] = plan_merge(*clusters[i], *clusters[j]);
    }
  }

  // Clusters outside `group` holding a value `root` accepts.
  auto stolen_from = [&](const PatternNode& root, const std::vector<std::size_t>& group) {
    Pattern merged;
    merged.root = root;
    const std::size_t shortest = min_length(merged.root);
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (!clusters[c] || std::find(group.begin(), group.end(), c) != group.end()) continue;
      for (std::size_t id : clusters[c]->members) {
        if (members[id].value.size() < shortest) continue;
        if (matches(merged, members[id].value)) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  };

  // A merge whose pattern accepts values of other clusters must take those
  // clusters along, and still pay off.
  auto close_merge = [&](const MergeOption& opt, std::vector<std::size_t>& group, Rendered& rendered) {
    rendered = opt.rendered;
    double parts = 0;
    for (std::size_t g : group) parts += clusters[g]->cost;
    for (int round = 0; round < 8; ++round) {
      const auto extra = stolen_from(rendered.root, group);
      if (extra.empty()) return true;
      const auto& key = clusters[group.front()]->keys[static_cast<int>(opt.level)];
      for (std::size_t c : extra) {
        const auto& k = clusters[c]->keys[static_cast<int>(opt.level)];
        if (!k || !key || *k != *key) return false;
        group.push_back(c);
        parts += clusters[c]->cost;
      }
      std::vector<std::size_t> ids;
      std::size_t total = 0;
      for (std::size_t g : group) {
        ids.insert(ids.end(), clusters[g]->members.begin(), clusters[g]->members.end());
        total += clusters[g]->total;
      }
      std::sort(ids.begin(), ids.end());
      rendered = renderer.render(opt.level, ids);
      if (cost_of(rendered, total) - parts >= -1e-9) return false;
    }
    return false;
  };

  while (true) {
    const std::size_t count = alive();
    if (count <= 1) break;
    const std::pair<std::size_t, std::size_t>* best_key = nullptr;
    const MergeOption* best = nullptr;
    for (const auto& [key, opt] : options_cache) {
      if (!opt.possible) continue;
      if (!best || opt.delta < best->delta - 1e-9 ||
          (std::abs(opt.delta - best->delta) <= 1e-9 && opt.rendered.text < best->rendered.text)) {
        best = &opt;
        best_key = &key;
      }
    }
    if (!best || best->delta >= -1e-9) break;
    std::vector<std::size_t> group = {best_key->first, best_key->second};
    Rendered rendered;
    if (!close_merge(*best, group, rendered)) {
      options_cache[*best_key].possible = false;
      continue;
    }

    Cluster merged;
    merged.level = best->level;
    for (int l = 0; l < kKeyedLevels; ++l) merged.keys[l] = clusters[group.front()]->keys[l];
    for (std::size_t g : group) {
      const Cluster& c = *clusters[g];
      merged.members.insert(merged.members.end(), c.members.begin(), c.members.end());
      merged.total += c.total;
      merged.has_empty = merged.has_empty || c.has_empty;
      for (int l = 0; l < kKeyedLevels; ++l) {
        if (merged.keys[l] && (!c.keys[l] || *c.keys[l] != *merged.keys[l])) merged.keys[l].reset();
      }
    }
    std::sort(merged.members.begin(), merged.members.end());
    merged.rendered = std::move(rendered);
    merged.cost = cost_of(merged.rendered, merged.total);

    for (std::size_t g : group) clusters[g].reset();
    for (auto it = options_cache.begin(); it != options_cache.end();) {
      const bool touched = std::find(group.begin(), group.end(), it->first.first) != group.end() ||
                           std::find(group.begin(), group.end(), it->first.second) != group.end();
      it = touched ? options_cache.erase(it) : std::next(it);
    }
    const std::size_t id = clusters.size();
    clusters.emplace_back(std::move(merged));
    for (std::size_t o = 0; o < id; ++o) {
      if (clusters[o]) options_cache[{o, id}] = plan_merge(*clusters[o], *clusters[id]);
    }
  }

  std::vector<const Cluster*> kept;
  for (const auto& c : clusters) {
    if (c) kept.push_back(&*c);
  }
  std::vector<Pattern> patterns;
  if (kept.size() > options.k) {
    // The rare tail becomes one exact disjunction of its values.
    std::sort(kept.begin(), kept.end(), [](const Cluster* a, const Cluster* b) {
      if (a->total != b->total) return a->total > b->total;
      return a->rendered.text < b->rendered.text;
    });
    const auto empty = std::find_if(kept.begin(), kept.end(), [](const Cluster* c) { return c->has_empty; });
    if (options.k >= 2 && empty != kept.end() && empty - kept.begin() >= static_cast<std::ptrdiff_t>(options.k - 1)) {
      std::rotate(kept.begin() + static_cast<std::ptrdiff_t>(options.k - 2), empty, empty + 1);
    }
    std::vector<const Cluster*> tail(kept.begin() + static_cast<std::ptrdiff_t>(options.k - 1), kept.end());
    kept.resize(options.k - 1);
    std::vector<SymbolString> alts;
    for (const Cluster* c : tail) {
      for (std::size_t id : c->members) {
        if (members[id].value.empty()) {
          kept.push_back(c);
        } else {
          alts.push_back(members[id].value);
        }
      }
    }
    std::sort(alts.begin(), alts.end());
    if (!alts.empty()) {
      Pattern p;
      p.root = PatternNode::sequence({PatternNode::disjunction(std::move(alts))});
      p.residual = true;
      p.coverage = compute_coverage(p, values);
      patterns.push_back(std::move(p));
    }
  }
  for (const Cluster* c : kept) {
    Pattern p;
    p.root = c->rendered.root;
    p.coverage = compute_coverage(p, values);
    patterns.push_back(std::move(p));
  }
  std::vector<std::string> texts;
  std::vector<std::size_t> order(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    order[i] = i;
    texts.push_back(to_text(patterns[i]));
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (patterns[a].coverage != patterns[b].coverage) return patterns[a].coverage > patterns[b].coverage;
    return texts[a] < texts[b];
  });
  std::vector<Pattern> sorted;
  for (std::size_t i : order) {
    sorted.push_back(std::move(patterns[i]));
    sorted.back().id = "p" + std::to_string(sorted.size() - 1);
  }
  return sorted;
}

double compute_coverage(const Pattern& pattern, std::span<const SymbolString> values) {
  if (values.empty()) return 0.0;
  std::size_t hit = 0;
  std::unordered_map<SymbolString, bool> memo;
  for (const auto& v : values) {
    auto it = memo.find(v);
    if (it == memo.end()) it = memo.emplace(v, matches(pattern, v)).first;
    hit += it->second;
  }
  return static_cast<double>(hit) / static_cast<double>(values.size());
}

std::vector<const Pattern*> PatternSet::significant_patterns() const {
  std::vector<const Pattern*> out;
  for (std::size_t i : significant) out.push_back(&all[i]);
  return out;
}

bool PatternSet::any_significant_match(SymbolView value) const {
  for (std::size_t i : significant) {
    if (matches(all[i], value)) return true;
  }
  return false;
}

PatternSet select_significant(std::vector<Pattern> patterns, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in (0, 1]");
  PatternSet set;
  set.delta = delta;
  set.all = std::move(patterns);
  for (std::size_t i = 0; i < set.all.size(); ++i) {
    if (!set.all[i].residual && set.all[i].coverage >= delta) set.significant.push_back(i);
  }
  return set;
}

PatternSet all_significant(std::vector<Pattern> patterns) {
  PatternSet set;
  set.delta = 0.0;
  set.all = std::move(patterns);
  for (std::size_t i = 0; i < set.all.size(); ++i) set.significant.push_back(i);
  return set;
}

}  // namespace strfix
