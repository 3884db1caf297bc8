#include <sstream>

#include "doctest.h"
#include "strfix/table.hpp"

using namespace strfix;

TEST_CASE("cell kinds") {
  CHECK(infer_cell_kind("12.5") == CellKind::numeric);
  CHECK(infer_cell_kind("-3") == CellKind::numeric);
  CHECK(infer_cell_kind("TRUE") == CellKind::logical);
  CHECK(infer_cell_kind("false") == CellKind::logical);
  CHECK(infer_cell_kind("#VALUE!") == CellKind::error);
  CHECK(infer_cell_kind("#REF!") == CellKind::error);
  CHECK(infer_cell_kind("US-123") == CellKind::text);
  CHECK(infer_cell_kind("") == CellKind::text);
  CHECK(CellValue::na().is_na());
}

TEST_CASE("csv with quotes, embedded newlines and empty fields") {
  const auto t = parse_csv("id,name\n1,\"a, b\"\n2,\"line\nbreak\"\n3,\n4,\"\"\n5,\"say \"\"hi\"\"\"\n");
  REQUIRE(t.column_count() == 2);
  REQUIRE(t.row_count() == 5);
  const auto& name = *t.find_column("name");
  CHECK(name.values[0].raw == "a, b");
  CHECK(name.values[1].raw == "line\nbreak");
  CHECK(name.values[2].is_na());
  CHECK(name.values[3].kind == CellKind::text);
  CHECK(name.values[3].raw.empty());
  CHECK(name.values[4].raw == "say \"hi\"");
  CHECK(t.find_column("id")->inferred_kind == ColumnKind::numeric);
  CHECK(name.inferred_kind == ColumnKind::text);
}

TEST_CASE("csv round trip keeps na apart from empty text") {
  const auto t = parse_csv("a,b\nx,\n,\"\"\n\"q,r\",s\n");
  const auto again = parse_csv(to_csv(t));
  CHECK(again == t);
}

TEST_CASE("headerless input gets positional names") {
  IngestOptions o;
  o.has_header = false;
  const auto t = parse_csv("c-1\nc3\n", o);
  CHECK(t.column(0).name == "col1");
  CHECK(t.row_count() == 2);
}

TEST_CASE("byte order mark and CRLF are tolerated") {
  const auto t = parse_csv("\xEF\xBB\xBFk\r\nv1\r\nv2\r\n");
  CHECK(t.column(0).name == "k");
  CHECK(t.row_count() == 2);
  CHECK(t.column(0).values[1].raw == "v2");
}

TEST_CASE("malformed csv reports row and offset") {
  try {
    parse_csv("a\n\"open\n");
    FAIL("expected an IngestError");
  } catch (const IngestError& e) {
    CHECK(e.row() == 2);
    CHECK(e.byte_offset() == 2);
  }
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), IngestError);
  CHECK_THROWS_AS(parse_csv("a,a\n1,2\n"), IngestError);
  CHECK_THROWS_AS(parse_csv("a\nx\"y\n"), IngestError);
  CHECK_THROWS_AS(load_table_file("/nonexistent/file.csv"), IngestError);
}

TEST_CASE("string column selection") {
  const auto t = parse_csv("num,text,mixed\n1,a,x\n2,b,1\n3,c,2\n4,,y\n");
  CHECK(select_string_columns(t) == std::vector<std::size_t>{1});
  CHECK(select_string_columns(t, 0.5) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("table mutation guards") {
  Table t("t");
  t.add_column({"a", {CellValue::from_text("1"), CellValue::from_text("2")}, ColumnKind::na});
  CHECK_THROWS_AS(t.add_column({"a", {CellValue::na(), CellValue::na()}, ColumnKind::na}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_column({"b", {CellValue::na()}, ColumnKind::na}), std::invalid_argument);
  t.set_cell(0, 1, CellValue::from_text("z"));
  CHECK(t.column(0).values[1].raw == "z");
  CHECK(t.column_index("a") == std::optional<std::size_t>{0});
  CHECK_FALSE(t.column_index("zz").has_value());
}
