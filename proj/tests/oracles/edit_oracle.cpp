#include "edit_oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_set>

namespace oracle {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

char pick_symbol(std::mt19937_64& rng) { return kAlphabet[static_cast<std::size_t>(uniform(rng, 0, 4))]; }

std::size_t atom_states(const Atom& a) {
  if (a.kind != Atom::Kind::alternatives) return 1;
  std::size_t n = 0;
  for (const auto& alt : a.alternatives) n += alt.size();
  return n;
}

bool atom_takes(const Atom& a, char c) {
  switch (a.kind) {
    case Atom::Kind::literal: return a.symbol == c;
    case Atom::Kind::digit: return c >= '0' && c <= '9';
    case Atom::Kind::lower: return c >= 'a' && c <= 'z';
    default: return false;
  }
}

// Calls `next(end)` for every way `body[k..]` matches s starting at `pos`.
bool match_body(const std::vector<Atom>& body, std::size_t k, const std::string& s, std::size_t pos,
                const std::function<bool(std::size_t)>& next) {
  if (k == body.size()) return next(pos);
  const Atom& a = body[k];
  if (a.kind == Atom::Kind::alternatives) {
    for (const auto& alt : a.alternatives) {
      if (s.compare(pos, alt.size(), alt) == 0 && pos + alt.size() <= s.size() &&
          match_body(body, k + 1, s, pos + alt.size(), next)) {
        return true;
      }
    }
    return false;
  }
  return pos < s.size() && atom_takes(a, s[pos]) && match_body(body, k + 1, s, pos + 1, next);
}

}  // namespace

std::string RegexModel::syntax() const {
  std::string out;
  for (const auto& item : items) {
    std::string body;
    for (const auto& a : item.body) {
      switch (a.kind) {
        case Atom::Kind::literal: body += a.symbol; break;
        case Atom::Kind::digit: body += "[0-9]"; break;
        case Atom::Kind::lower: body += "[a-z]"; break;
        case Atom::Kind::alternatives: {
          body += "(";
          for (std::size_t i = 0; i < a.alternatives.size(); ++i) body += (i ? "|" : "") + a.alternatives[i];
          body += ")";
          break;
        }
      }
    }
    out += item.repeated ? "(" + body + ")+" : body;
  }
  return out;
}

std::size_t RegexModel::state_count() const {
  std::size_t n = 0;
  for (const auto& item : items) {
    for (const auto& a : item.body) n += atom_states(a);
  }
  return n;
}

std::size_t RegexModel::copies_for(std::size_t n) const {
  std::size_t body = std::numeric_limits<std::size_t>::max();
  for (const auto& item : items) {
    if (item.repeated) body = std::min(body, item.body.size());
  }
  if (body == std::numeric_limits<std::size_t>::max()) return 1;
  return std::max<std::size_t>(1, (n + body - 1) / body);
}

bool RegexModel::accepts(const std::string& s, std::size_t copies) const {
  std::function<bool(std::size_t, std::size_t)> from = [&](std::size_t idx, std::size_t pos) -> bool {
    if (idx == items.size()) return pos == s.size();
    const Item& item = items[idx];
    if (!item.repeated) {
      return match_body(item.body, 0, s, pos, [&](std::size_t end) { return from(idx + 1, end); });
    }
    std::function<bool(std::size_t, std::size_t)> rep = [&](std::size_t used, std::size_t p) -> bool {
      return match_body(item.body, 0, s, p, [&](std::size_t end) {
        if (from(idx + 1, end)) return true;
        return used + 1 < copies && rep(used + 1, end);
      });
    };
    return rep(0, pos);
  };
  return from(0, 0);
}

RegexModel random_model(std::mt19937_64& rng) {
  while (true) {
    RegexModel m;
    const int n = uniform(rng, 1, 4);
    bool has_group = false;
    for (int i = 0; i < n; ++i) {
      Item item;
      const int roll = uniform(rng, 0, 9);
      if (roll < 2 && !has_group) {
        // A group of plain atoms: one cycle of fixed length.
        item.repeated = true;
        has_group = true;
        const int len = uniform(rng, 1, 3);
        for (int k = 0; k < len; ++k) {
          Atom a;
          const int r = uniform(rng, 0, 2);
          a.kind = r == 0 ? Atom::Kind::literal : r == 1 ? Atom::Kind::digit : Atom::Kind::lower;
          a.symbol = pick_symbol(rng);
          item.body.push_back(a);
        }
      } else {
        Atom a;
        if (roll < 3) {
          a.kind = Atom::Kind::alternatives;
          std::set<std::string> alts;
          while (alts.size() < 2) {
            std::string s;
            const int len = uniform(rng, 1, 2);
            for (int k = 0; k < len; ++k) s += pick_symbol(rng);
            alts.insert(s);
          }
          a.alternatives.assign(alts.begin(), alts.end());
        } else if (roll < 5) {
          a.kind = Atom::Kind::digit;
        } else if (roll < 6) {
          a.kind = Atom::Kind::lower;
        } else {
          a.kind = Atom::Kind::literal;
          a.symbol = pick_symbol(rng);
        }
        item.body.push_back(a);
      }
      m.items.push_back(item);
    }
    if (m.state_count() <= 8) return m;
  }
}

std::string random_value(std::mt19937_64& rng, std::size_t max_len) {
  const int len = uniform(rng, 1, static_cast<int>(max_len));
  std::string s;
  for (int i = 0; i < len; ++i) s += pick_symbol(rng);
  return s;
}

int bfs_distance(const RegexModel& model, const std::string& value, std::size_t copies, int limit) {
  std::unordered_set<std::string> seen{value};
  std::vector<std::string> frontier{value};
  for (int depth = 0; depth <= limit; ++depth) {
    for (const auto& s : frontier) {
      if (model.accepts(s, copies)) return depth;
    }
    if (depth == limit) break;
    std::vector<std::string> next;
    auto push = [&](std::string t) {
      if (seen.insert(t).second) next.push_back(std::move(t));
    };
    for (const auto& s : frontier) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        push(s.substr(0, i) + s.substr(i + 1));
        for (char c : kAlphabet) {
          if (c != s[i]) push(s.substr(0, i) + c + s.substr(i + 1));
        }
      }
      for (std::size_t i = 0; i <= s.size(); ++i) {
        for (char c : kAlphabet) push(s.substr(0, i) + c + s.substr(i));
      }
    }
    frontier = std::move(next);
  }
  return -1;
}

int levenshtein(const std::string& a, const std::string& b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

// Every choice an atom offers over kAlphabet.
std::vector<std::string> atom_choices(const Atom& a) {
  std::vector<std::string> out;
  if (a.kind == Atom::Kind::alternatives) return a.alternatives;
  for (char c : kAlphabet) {
    if (atom_takes(a, c)) out.emplace_back(1, c);
  }
  return out;
}

}  // namespace

int enumerated_distance(const RegexModel& model, const std::string& value, std::size_t copies, std::size_t max_len) {
  // Flatten every admissible copy count into plain atom sequences.
  std::vector<std::vector<const Atom*>> shapes{{}};
  for (const auto& item : model.items) {
    std::vector<std::vector<const Atom*>> grown;
    const std::size_t reps = item.repeated ? copies : 1;
    for (const auto& shape : shapes) {
      auto s = shape;
      for (std::size_t r = 1; r <= reps; ++r) {
        for (const auto& a : item.body) s.push_back(&a);
        grown.push_back(s);
      }
    }
    shapes = std::move(grown);
  }
  int best = -1;
  for (const auto& shape : shapes) {
    std::function<void(std::size_t, const std::string&)> walk = [&](std::size_t k, const std::string& prefix) {
      if (prefix.size() > max_len) return;
      if (k == shape.size()) {
        const int d = levenshtein(value, prefix);
        if (best < 0 || d < best) best = d;
        return;
      }
      for (const auto& c : atom_choices(*shape[k])) walk(k + 1, prefix + c);
    };
    walk(0, "");
  }
  return best;
}

namespace {

bool label_takes(const strfix::EdgeLabel& label, char32_t c) {
  using strfix::LabelKind;
  switch (label.kind) {
    case LabelKind::symbol: return label.symbol == c;
    case LabelKind::symbol_set: return label.set.find(c) != std::u32string::npos;
    case LabelKind::char_class: {
      const bool digit = c >= U'0' && c <= U'9';
      const bool lower = c >= U'a' && c <= U'z';
      const bool upper = c >= U'A' && c <= U'Z';
      switch (label.char_class) {
        case strfix::CharClass::digit: return digit;
        case strfix::CharClass::lower: return lower;
        case strfix::CharClass::upper: return upper;
        case strfix::CharClass::letter: return lower || upper;
        case strfix::CharClass::alnum: return digit || lower || upper;
        case strfix::CharClass::space: return c == U' ';
        case strfix::CharClass::alnum_space: return digit || lower || upper || c == U' ';
        case strfix::CharClass::binary01: return c == U'0' || c == U'1';
      }
    }
  }
  return false;
}

}  // namespace

AuditResult audit_recurrence(const strfix::UnrolledDag& dag, const std::u32string& value,
                             const strfix::DpMatrices& dp) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  auto cell = [&](std::size_t i, std::size_t j) { return std::min(dp.at(i, j), kInf); };
  for (std::size_t i = 0; i < dp.rows; ++i) {
    for (std::size_t j = 0; j < dp.cols; ++j) {
      int expected;
      if (j == 0) {
        expected = static_cast<int>(i);
      } else {
        expected = kInf;
        const auto& node = dag.nodes[j];
        for (std::size_t p : node.preds) {
          if (i > 0) expected = std::min(expected, cell(i - 1, p) + (label_takes(node.label, value[i - 1]) ? 0 : 1));
          expected = std::min(expected, cell(i, p) + 1);
        }
        if (i > 0) expected = std::min(expected, cell(i - 1, j) + 1);
        expected = std::min(expected, kInf);
      }
      if (cell(i, j) != expected) {
        return {false, "cost(" + std::to_string(i) + "," + std::to_string(j) + ")=" + std::to_string(cell(i, j)) +
                           " expected " + std::to_string(expected)};
      }
      if (j == 0 || expected >= kInf) continue;
      const auto& m = dp.move(i, j);
      int via = kInf;
      switch (m.kind) {
        case strfix::ActionKind::match:
          if (i > 0 && label_takes(dag.nodes[j].label, value[i - 1])) via = cell(i - 1, m.pred);
          break;
        case strfix::ActionKind::substitute:
          if (i > 0) via = cell(i - 1, m.pred) + 1;
          break;
        case strfix::ActionKind::remove:
          if (i > 0) via = cell(i - 1, j) + 1;
          break;
        case strfix::ActionKind::insert: via = cell(i, m.pred) + 1; break;
      }
      if (via != expected) {
        return {false, "move at (" + std::to_string(i) + "," + std::to_string(j) + ") does not realise the cost"};
      }
    }
  }
  return {};
}

}  // namespace oracle
