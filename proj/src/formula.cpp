#include "strfix/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "strfix/symbols.hpp"

namespace strfix {

namespace {

std::string format_number(double v) {
  char buf[64];
  if (std::abs(v) < 1e15 && v == std::floor(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.15g", v);
  }
  return buf;
}

struct Arity {
  std::size_t min;
  std::size_t max;
};

const std::map<std::string, Arity>& builtins() {
  static const std::map<std::string, Arity> kBuiltins = {
      {"SEARCH", {2, 3}}, {"FIND", {2, 3}},   {"LEFT", {1, 2}},       {"RIGHT", {1, 2}},
      {"MID", {3, 3}},    {"LEN", {1, 1}},    {"UPPER", {1, 1}},      {"LOWER", {1, 1}},
      {"SUBSTITUTE", {3, 4}}, {"CONCAT", {1, 255}}, {"VALUE", {1, 1}}, {"TRIM", {1, 1}},
  };
  return kBuiltins;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    skip();
    if (peek() == '=') {
      ++p_;
    }
    Expr e = concat();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return e;
  }

  std::vector<std::string> columns;

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw FormulaError(msg + " at offset " + std::to_string(p_));
  }

  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  char peek() const { return p_ < s_.size() ? s_[p_] : '\0'; }

  Expr binary(char op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = Expr::Kind::binary;
    e.op = op;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr concat() {
    Expr lhs = additive();
    while (true) {
      skip();
      if (peek() != '&') return lhs;
      ++p_;
      lhs = binary('&', std::move(lhs), additive());
    }
  }

  Expr additive() {
    Expr lhs = term();
    while (true) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++p_;
      lhs = binary(c, std::move(lhs), term());
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      skip();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++p_;
      lhs = binary(c, std::move(lhs), unary());
    }
  }

  Expr unary() {
    skip();
    if (peek() == '-') {
      ++p_;
      Expr e;
      e.kind = Expr::Kind::negate;
      e.args.push_back(unary());
      return e;
    }
    if (peek() == '+') {
      ++p_;
      return unary();
    }
    return primary();
  }

  Expr primary() {
    skip();
    const char c = peek();
    Expr e;
    if (c == '"') {
      ++p_;
      e.kind = Expr::Kind::text;
      while (true) {
        if (p_ >= s_.size()) fail("unterminated string");
        if (s_[p_] == '"') {
          if (p_ + 1 < s_.size() && s_[p_ + 1] == '"') {
            e.text += '"';
            p_ += 2;
            continue;
          }
          ++p_;
          break;
        }
        e.text += s_[p_++];
      }
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = p_;
      while (p_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '.')) ++p_;
      const std::string digits(s_.substr(start, p_ - start));
      try {
        std::size_t used = 0;
        e.number = std::stod(digits, &used);
        if (used != digits.size()) fail("bad number");
      } catch (const std::invalid_argument&) {
        fail("bad number");
      }
      e.kind = Expr::Kind::number;
      return e;
    }
    if (c == '[') {
      ++p_;
      if (peek() == '@') ++p_;
      const auto close = s_.find(']', p_);
      if (close == std::string_view::npos) fail("unterminated column reference");
      e.kind = Expr::Kind::column;
      e.text = std::string(s_.substr(p_, close - p_));
      if (e.text.empty()) fail("empty column reference");
      p_ = close + 1;
      if (std::find(columns.begin(), columns.end(), e.text) == columns.end()) columns.push_back(e.text);
      return e;
    }
    if (c == '(') {
      ++p_;
      e = concat();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++p_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_' || s_[p_] == '.')) ++p_;
      std::string name(s_.substr(start, p_ - start));
      skip();
      if (peek() != '(') {
        e.kind = Expr::Kind::name;
        e.text = std::move(name);
        return e;
      }
      ++p_;
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
      e.kind = Expr::Kind::call;
      e.text = name;
      skip();
      if (peek() != ')') {
        while (true) {
          e.args.push_back(concat());
          skip();
          if (peek() == ',') {
            ++p_;
            continue;
          }
          if (peek() == ')') break;
          fail("expected ',' or ')'");
        }
      }
      ++p_;
      const auto it = builtins().find(name);
      if (it == builtins().end()) throw FormulaError("unknown function " + name);
      if (e.args.size() < it->second.min || e.args.size() > it->second.max) {
        throw FormulaError("wrong number of arguments to " + name);
      }
      return e;
    }
    if (p_ >= s_.size()) fail("unexpected end of formula");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

std::optional<double> parse_number(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && s[b] == ' ') ++b;
  while (e > b && s[e - 1] == ' ') --e;
  if (b == e) return 0.0;
  const std::string t = s.substr(b, e - b);
  if (infer_cell_kind(t) != CellKind::numeric) return std::nullopt;
  return std::stod(t);
}

FormulaValue as_number(const FormulaValue& v) {
  if (v.kind != FormulaValue::Kind::text) return v;
  auto n = parse_number(v.text);
  if (!n) return FormulaValue::error("#VALUE!");
  return FormulaValue::of_number(*n);
}

std::string as_text(const FormulaValue& v) {
  return v.kind == FormulaValue::Kind::number ? format_number(v.number) : v.text;
}

FormulaValue checked(double v) {
  if (std::isnan(v) || std::isinf(v)) return FormulaValue::error("NaN");
  return FormulaValue::of_number(v);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class Evaluator {
 public:
  Evaluator(const Table& table, std::size_t row) : table_(table), row_(row) {}

  FormulaValue eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::number: return FormulaValue::of_number(e.number);
      case Expr::Kind::text: return FormulaValue::of_text(e.text);
      case Expr::Kind::name: return FormulaValue::error("#NAME?");
      case Expr::Kind::column: {
        const Column* col = table_.find_column(e.text);
        if (!col) return FormulaValue::error("#REF!");
        const CellValue& cell = col->values.at(row_);
        switch (cell.kind) {
          case CellKind::na: return FormulaValue::of_text("");
          case CellKind::error: return FormulaValue::error(cell.raw);
          case CellKind::numeric: return FormulaValue::of_number(std::stod(cell.raw));
          default: return FormulaValue::of_text(cell.raw);
        }
      }
      case Expr::Kind::negate: {
        auto v = as_number(eval(e.args[0]));
        if (v.is_error()) return v;
        return checked(-v.number);
      }
      case Expr::Kind::binary: return binary(e);
      case Expr::Kind::call: return call(e);
    }
    return FormulaValue::error("#VALUE!");
  }

 private:
  FormulaValue binary(const Expr& e) {
    auto a = eval(e.args[0]);
    if (a.is_error()) return a;
    auto b = eval(e.args[1]);
    if (b.is_error()) return b;
    if (e.op == '&') return FormulaValue::of_text(as_text(a) + as_text(b));
    a = as_number(a);
    if (a.is_error()) return a;
    b = as_number(b);
    if (b.is_error()) return b;
    switch (e.op) {
      case '+': return checked(a.number + b.number);
      case '-': return checked(a.number - b.number);
      case '*': return checked(a.number * b.number);
      default:
        if (b.number == 0.0) return FormulaValue::error("#DIV/0!");
        return checked(a.number / b.number);
    }
  }

  // Evaluates all arguments, stopping at the first error.
  bool args(const Expr& e, std::vector<FormulaValue>& out, FormulaValue& err) {
    for (const auto& a : e.args) {
      out.push_back(eval(a));
      if (out.back().is_error()) {
        err = out.back();
        return false;
      }
    }
    return true;
  }

  static bool integer_arg(const FormulaValue& v, long& out) {
    auto n = as_number(v);
    if (n.is_error()) return false;
    out = static_cast<long>(std::floor(n.number));
    return true;
  }

  FormulaValue call(const Expr& e) {
    std::vector<FormulaValue> v;
    FormulaValue err;
    if (!args(e, v, err)) return err;
    const std::string& f = e.text;
    const auto bad = FormulaValue::error("#VALUE!");
    if (f == "SEARCH" || f == "FIND") {
      SymbolString needle = decode_utf8(as_text(v[0]));
      SymbolString hay = decode_utf8(as_text(v[1]));
      long start = 1;
      if (v.size() == 3 && !integer_arg(v[2], start)) return bad;
      if (start < 1 || static_cast<std::size_t>(start) > hay.size() + 1) return bad;
      if (f == "SEARCH") {
        needle = decode_utf8(lower(encode_utf8(needle)));
        hay = decode_utf8(lower(encode_utf8(hay)));
      }
      const auto pos = hay.find(needle, static_cast<std::size_t>(start - 1));
      if (pos == SymbolString::npos) return bad;
      return FormulaValue::of_number(static_cast<double>(pos + 1));
    }
    if (f == "LEFT" || f == "RIGHT") {
      const SymbolString s = decode_utf8(as_text(v[0]));
      long n = 1;
      if (v.size() == 2 && !integer_arg(v[1], n)) return bad;
      if (n < 0) return bad;
      const std::size_t k = std::min(s.size(), static_cast<std::size_t>(n));
      return FormulaValue::of_text(encode_utf8(f == "LEFT" ? s.substr(0, k) : s.substr(s.size() - k)));
    }
    if (f == "MID") {
      const SymbolString s = decode_utf8(as_text(v[0]));
      long start = 0, n = 0;
      if (!integer_arg(v[1], start) || !integer_arg(v[2], n) || start < 1 || n < 0) return bad;
      if (static_cast<std::size_t>(start) > s.size()) return FormulaValue::of_text("");
      return FormulaValue::of_text(encode_utf8(s.substr(static_cast<std::size_t>(start - 1), static_cast<std::size_t>(n))));
    }
    if (f == "LEN") return FormulaValue::of_number(static_cast<double>(decode_utf8(as_text(v[0])).size()));
    if (f == "UPPER") return FormulaValue::of_text(upper(as_text(v[0])));
    if (f == "LOWER") return FormulaValue::of_text(lower(as_text(v[0])));
    if (f == "SUBSTITUTE") {
      const std::string s = as_text(v[0]), from = as_text(v[1]), to = as_text(v[2]);
      long which = 0;
      if (v.size() == 4 && (!integer_arg(v[3], which) || which < 1)) return bad;
      if (from.empty()) return FormulaValue::of_text(s);
      std::string out;
      std::size_t pos = 0;
      long seen = 0;
      while (true) {
        const auto hit = s.find(from, pos);
        if (hit == std::string::npos) break;
        ++seen;
        out += s.substr(pos, hit - pos);
        out += (which == 0 || which == seen) ? to : from;
        pos = hit + from.size();
      }
      out += s.substr(pos);
      return FormulaValue::of_text(out);
    }
    if (f == "CONCAT") {
      std::string out;
      for (const auto& a : v) out += as_text(a);
      return FormulaValue::of_text(out);
    }
    if (f == "VALUE") {
      auto n = as_number(v[0].kind == FormulaValue::Kind::text && v[0].text.empty() ? bad : v[0]);
      return n;
    }
    if (f == "TRIM") {
      const std::string s = as_text(v[0]);
      std::string out;
      for (char c : s) {
        if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
        out += c;
      }
      if (!out.empty() && out.back() == ' ') out.pop_back();
      return FormulaValue::of_text(out);
    }
    return FormulaValue::error("#NAME?");
  }

  const Table& table_;
  std::size_t row_;
};

}  // namespace

FormulaValue FormulaValue::of_number(double v) {
  FormulaValue out;
  out.kind = Kind::number;
  out.number = v;
  return out;
}

FormulaValue FormulaValue::of_text(std::string v) {
  FormulaValue out;
  out.kind = Kind::text;
  out.text = std::move(v);
  return out;
}

FormulaValue FormulaValue::error(std::string code) {
  FormulaValue out;
  out.kind = Kind::error;
  out.text = std::move(code);
  return out;
}

CellValue FormulaValue::to_cell() const {
  CellValue c;
  switch (kind) {
    case Kind::number:
      c.kind = CellKind::numeric;
      c.raw = format_number(number);
      break;
    case Kind::text:
      c.kind = CellKind::text;
      c.raw = text;
      break;
    case Kind::error:
      c.kind = CellKind::error;
      c.raw = text;
      break;
  }
  return c;
}

FormulaProgram FormulaProgram::parse(std::string_view source) {
  Parser p(source);
  FormulaProgram out;
  out.source_ = std::string(source);
  out.root_ = p.parse();
  out.inputs_ = std::move(p.columns);
  return out;
}

void FormulaProgram::validate(const Table& table) const {
  for (const auto& c : inputs_) {
    if (!table.find_column(c)) throw FormulaError("formula references missing column '" + c + "'");
  }
}

FormulaValue FormulaProgram::evaluate(const Table& table, std::size_t row) const {
  return Evaluator(table, row).eval(root_);
}

}  // namespace strfix
