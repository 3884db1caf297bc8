#include "strfix/table.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace strfix {

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::text: return "text";
    case CellKind::numeric: return "numeric";
    case CellKind::logical: return "logical";
    case CellKind::error: return "error";
    case CellKind::na: return "na";
  }
  return "?";
}

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::text: return "text";
    case ColumnKind::numeric: return "numeric";
    case ColumnKind::logical: return "logical";
    case ColumnKind::error: return "error";
    case ColumnKind::formula: return "formula";
    case ColumnKind::na: return "na";
    case ColumnKind::mixed: return "mixed";
  }
  return "?";
}

bool is_exceptional_value(std::string_view raw) {
  static constexpr std::array<std::string_view, 7> kLexicon = {
      "#VALUE!", "#N/A", "#NAME?", "#DIV/0!", "#REF!", "NaN", "nan"};
  return std::find(kLexicon.begin(), kLexicon.end(), raw) != kLexicon.end();
}

namespace {

bool is_numeric_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

CellKind infer_cell_kind(std::string_view raw) {
  if (is_exceptional_value(raw)) return CellKind::error;
  if (is_numeric_literal(raw)) return CellKind::numeric;
  if (iequals(raw, "TRUE") || iequals(raw, "FALSE")) return CellKind::logical;
  return CellKind::text;
}

CellValue CellValue::from_text(std::string raw) {
  CellValue v;
  v.kind = infer_cell_kind(raw);
  v.raw = std::move(raw);
  return v;
}

void Column::infer_kind() {
  std::optional<CellKind> seen;
  bool mixed = false;
  for (const auto& v : values) {
    if (v.is_na()) continue;
    if (!seen) {
      seen = v.kind;
    } else if (*seen != v.kind) {
      mixed = true;
    }
  }
  if (!seen) {
    inferred_kind = ColumnKind::na;
  } else if (mixed) {
    inferred_kind = ColumnKind::mixed;
  } else {
    switch (*seen) {
      case CellKind::text: inferred_kind = ColumnKind::text; break;
      case CellKind::numeric: inferred_kind = ColumnKind::numeric; break;
      case CellKind::logical: inferred_kind = ColumnKind::logical; break;
      case CellKind::error: inferred_kind = ColumnKind::error; break;
      case CellKind::na: inferred_kind = ColumnKind::na; break;
    }
  }
}

IngestError::IngestError(const std::string& what, std::size_t row, std::size_t byte_offset)
    : std::runtime_error(what + " (row " + std::to_string(row) + ", byte " +
                         std::to_string(byte_offset) + ")"),
      row_(row),
      byte_offset_(byte_offset) {}

const Column* Table::find_column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<std::size_t> Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

void Table::add_column(Column column) {
  if (find_column(column.name)) {
    throw std::invalid_argument("duplicate column name: " + column.name);
  }
  if (!columns_.empty() && column.values.size() != row_count_) {
    throw std::invalid_argument("column " + column.name + " has " +
                                std::to_string(column.values.size()) + " values, expected " +
                                std::to_string(row_count_));
  }
  row_count_ = column.values.size();
  columns_.push_back(std::move(column));
}

void Table::set_cell(std::size_t column, std::size_t row, CellValue value) {
  auto& col = columns_.at(column);
  col.values.at(row) = std::move(value);
  col.infer_kind();
}

namespace {

struct RawField {
  std::string text;
  bool quoted = false;
};

// RFC 4180 record splitter. Tracks record number and byte offset for errors.
std::vector<std::vector<RawField>> split_records(std::string_view text, char delim) {
  std::vector<std::vector<RawField>> records;
  std::vector<RawField> record;
  RawField field;
  std::size_t i = 0;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field = RawField{};
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (!field_started && c == '"') {
      field.quoted = true;
      field_started = true;
      const std::size_t open = i;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.text.push_back('"');
            i += 2;
          } else {
            closed = true;
            ++i;
            break;
          }
        } else {
          field.text.push_back(text[i++]);
        }
      }
      if (!closed) {
        throw IngestError("unterminated quoted field", records.size() + 1, open);
      }
      if (i < text.size() && text[i] != delim && text[i] != '\n' && text[i] != '\r') {
        throw IngestError("unexpected character after closing quote", records.size() + 1, i);
      }
      continue;
    }
    if (c == delim) {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      continue;
    }
    if (c == '"') {
      throw IngestError("quote inside unquoted field", records.size() + 1, i);
    }
    field.text.push_back(c);
    field_started = true;
    ++i;
  }
  if (field_started || !record.empty()) end_record();
  return records;
}

}  // namespace

Table parse_csv(std::string_view text, const IngestOptions& options, std::string name) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
    text.remove_prefix(3);
  }
  auto records = split_records(text, options.delimiter);
  Table table(std::move(name));
  if (records.empty()) return table;

  const std::size_t width = records.front().size();
  std::vector<std::string> headers;
  std::size_t first_data = 0;
  if (options.has_header) {
    std::set<std::string> seen;
    for (auto& f : records.front()) {
      if (!seen.insert(f.text).second) {
        throw IngestError("duplicate header '" + f.text + "'", 1, 0);
      }
      headers.push_back(f.text);
    }
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) headers.push_back("col" + std::to_string(c + 1));
  }

  std::vector<Column> columns(width);
  for (std::size_t c = 0; c < width; ++c) columns[c].name = headers[c];
  for (std::size_t r = first_data; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.size() == 1 && rec[0].text.empty() && !rec[0].quoted && width > 1) continue;
    if (rec.size() != width) {
      throw IngestError("expected " + std::to_string(width) + " fields, found " +
                            std::to_string(rec.size()),
                        r + 1, 0);
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (rec[c].text.empty() && !rec[c].quoted) {
        columns[c].values.push_back(CellValue::na());
      } else {
        columns[c].values.push_back(CellValue::from_text(std::move(rec[c].text)));
      }
    }
  }
  for (auto& col : columns) {
    col.infer_kind();
    table.add_column(std::move(col));
  }
  return table;
}

Table load_table(std::istream& source, const IngestOptions& options, std::string name) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return parse_csv(text, options, std::move(name));
}

Table load_table_file(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path, 0, 0);
  auto slash = path.find_last_of('/');
  return load_table(in, options, slash == std::string::npos ? path : path.substr(slash + 1));
}

namespace {

void write_field(std::string& out, const CellValue& v, char delim) {
  if (v.is_na()) return;
  const bool needs_quotes = v.raw.empty() ||
                            v.raw.find_first_of(std::string{delim, '"', '\n', '\r'}) !=
                                std::string::npos;
  if (!needs_quotes) {
    out += v.raw;
    return;
  }
  out += '"';
  for (char c : v.raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string to_csv(const Table& table, char delimiter) {
  std::string out;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    if (c) out += delimiter;
    write_field(out, CellValue::from_text(table.column(c).name), delimiter);
  }
  out += '\n';
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < table.column_count(); ++c) {
      if (c) out += delimiter;
      write_field(out, table.column(c).values[r], delimiter);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::size_t> select_string_columns(const Table& table, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    std::size_t present = 0;
    std::size_t text = 0;
    for (const auto& v : table.column(c).values) {
      if (v.is_na()) continue;
      ++present;
      if (v.kind == CellKind::text) ++text;
    }
    if (present > 0 && static_cast<double>(text) >= threshold * static_cast<double>(present)) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace strfix
