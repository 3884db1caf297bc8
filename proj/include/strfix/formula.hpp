#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strfix/table.hpp"

namespace strfix {

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FormulaValue {
  enum class Kind { number, text, error };
  Kind kind = Kind::text;
  double number = 0.0;
  /// Text, or the error code such as "#VALUE!".
  std::string text;

  static FormulaValue of_number(double v);
  static FormulaValue of_text(std::string v);
  static FormulaValue error(std::string code);
  bool is_error() const { return kind == Kind::error; }
  CellValue to_cell() const;
};

struct Expr {
  enum class Kind { number, text, column, name, call, negate, binary };
  Kind kind = Kind::number;
  double number = 0.0;
  /// Literal text, column name, identifier or function name.
  std::string text;
  char op = 0;
  std::vector<Expr> args;
};

/// Excel-like row-wise formula: literals, [@Column] references, the
/// operators + - * / & and unary minus, and the builtins SEARCH, FIND, LEFT,
/// RIGHT, MID, LEN, UPPER, LOWER, SUBSTITUTE, CONCAT, VALUE and TRIM.
class FormulaProgram {
 public:
  /// Throws FormulaError on a syntax error, an unknown function or a wrong
  /// argument count.
  static FormulaProgram parse(std::string_view source);

  const std::string& source() const { return source_; }
  const Expr& root() const { return root_; }
  /// Referenced columns in order of first use.
  const std::vector<std::string>& input_columns() const { return inputs_; }

  /// Throws FormulaError when a referenced column is missing.
  void validate(const Table& table) const;
  /// Reads only row `row`; failures come back as error values.
  FormulaValue evaluate(const Table& table, std::size_t row) const;

 private:
  std::string source_;
  Expr root_;
  std::vector<std::string> inputs_;
};

}  // namespace strfix
