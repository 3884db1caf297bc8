#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strfix {

enum class CellKind { text, numeric, logical, error, na };
enum class ColumnKind { text, numeric, logical, error, formula, na, mixed };

std::string_view to_string(CellKind kind);
std::string_view to_string(ColumnKind kind);

/// Spreadsheet-style exceptional values: #VALUE!, #N/A, #NAME?, #DIV/0!,
/// #REF!, NaN, nan.
bool is_exceptional_value(std::string_view raw);

struct CellValue {
  std::string raw;
  CellKind kind = CellKind::na;

  static CellValue na() { return {}; }
  /// Classifies `raw`; the empty string is text, not na.
  static CellValue from_text(std::string raw);

  bool is_na() const { return kind == CellKind::na; }
  friend bool operator==(const CellValue&, const CellValue&) = default;
};

CellKind infer_cell_kind(std::string_view raw);

struct Column {
  std::string name;
  std::vector<CellValue> values;
  ColumnKind inferred_kind = ColumnKind::na;

  void infer_kind();
  friend bool operator==(const Column&, const Column&) = default;
};

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t row, std::size_t byte_offset);
  std::size_t row() const { return row_; }
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t row_;
  std::size_t byte_offset_;
};

struct IngestOptions {
  bool has_header = true;
  char delimiter = ',';
};

class Table {
 public:
  Table() = default;
  explicit Table(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_.at(index); }
  const Column* find_column(std::string_view name) const;
  std::optional<std::size_t> column_index(std::string_view name) const;

  /// Appends a column; throws std::invalid_argument on a duplicate name or a
  /// row count mismatch.
  void add_column(Column column);
  void set_cell(std::size_t column, std::size_t row, CellValue value);

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

Table load_table(std::istream& source, const IngestOptions& options = {},
                 std::string name = "table");
Table load_table_file(const std::string& path, const IngestOptions& options = {});
Table parse_csv(std::string_view text, const IngestOptions& options = {},
                std::string name = "table");

/// Writes RFC 4180 CSV. na cells are written empty; empty text is written as
/// a quoted empty field so the distinction survives a reload.
std::string to_csv(const Table& table, char delimiter = ',');

/// Columns whose non-na values are at least `threshold` text, in order.
std::vector<std::size_t> select_string_columns(const Table& table, double threshold = 0.9);

}  // namespace strfix
