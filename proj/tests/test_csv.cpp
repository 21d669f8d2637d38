/*
 * Copyright 2026 The Blindfold Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "blindfold/csv.hpp"
#include "blindfold/rng.hpp"

using namespace blindfold;

TEST_SUITE_BEGIN("csv");

TEST_CASE("basic two-column parse with kind inference") {
  Table t = parse_delimited("a,b\n1,x\n2,y\n", "t");
  REQUIRE(t.columns.size() == 2);
  CHECK(t.row_count == 2);
  CHECK(t.columns[0].kind == ColumnKind::Numeric);
  CHECK(t.columns[0].numbers == std::vector<double>{1.0, 2.0});
  CHECK(t.columns[1].kind == ColumnKind::Categorical);
  CHECK(t.columns[1].token_at(0) == "x");
  CHECK(t.columns[1].token_at(1) == "y");
}

TEST_CASE("ragged row reports its 1-based data row") {
  CHECK_THROWS_WITH_AS(parse_delimited("a,b\n1,x\n1,x,z\n", "t"),
                       doctest::Contains("row 2"), DataError);
}

TEST_CASE("duplicate header names rejected") {
  CHECK_THROWS_AS(parse_delimited("a,a\n1,2\n", "t"), DataError);
}

TEST_CASE("quotes protect delimiters, newlines and literal quotes") {
  Table t = parse_delimited("name,v\n\"x,\ny\",3\n\"say \"\"hi\"\"\",4\n", "t");
  CHECK(t.row_count == 2);
  CHECK(t.columns[0].token_at(0) == "x,\ny");
  CHECK(t.columns[0].token_at(1) == "say \"hi\"");
}

TEST_CASE("unquoted fields are trimmed, quoted fields are not") {
  Table t = parse_delimited(" h1 , h2 \n  tok  ,\"  keep  \"\n", "t");
  CHECK(t.columns[0].name == "h1");
  CHECK(t.columns[1].name == "h2");
  CHECK(t.columns[0].token_at(0) == "tok");
  CHECK(t.columns[1].token_at(0) == "  keep  ");
}

TEST_CASE("missing values: empty numeric is NaN, empty categorical is the token") {
  Table t = parse_delimited("n,c\n1,\n,x\n", "t");
  CHECK(t.columns[0].kind == ColumnKind::Numeric);
  CHECK(std::isnan(t.columns[0].numbers[1]));
  CHECK(t.columns[1].token_at(0) == kMissingToken);
  CHECK(t.columns[1].token_at(1) == "x");
}

TEST_CASE("dollar signs and grouping commas parse as numbers") {
  Table t = parse_delimited("m\n$1234.50\n\"2,500\"\n$3\n", "t");
  REQUIRE(t.columns[0].kind == ColumnKind::Numeric);
  CHECK(t.columns[0].numbers == std::vector<double>{1234.5, 2500.0, 3.0});
}

TEST_CASE("a single non-numeric token makes the column categorical") {
  Table t = parse_delimited("m\n1\ntwo\n3\n", "t");
  CHECK(t.columns[0].kind == ColumnKind::Categorical);
  CHECK(t.columns[0].token_at(0) == "1");
}

TEST_CASE("categorical override keeps code-like columns textual") {
  CsvFormat fmt;
  fmt.categorical_overrides = {"zip"};
  Table t = parse_delimited("zip,v\n01040,1\n36301,2\n", "t", fmt);
  CHECK(t.columns[0].kind == ColumnKind::Categorical);
  CHECK(t.columns[0].token_at(0) == "01040");  // leading zero survives
}

TEST_CASE("headerless format synthesizes column names") {
  CsvFormat fmt;
  fmt.header = false;
  Table t = parse_delimited("1,x\n2,y\n", "t", fmt);
  CHECK(t.columns[0].name == "col_0");
  CHECK(t.columns[1].name == "col_1");
  CHECK(t.row_count == 2);
}

TEST_CASE("empty input rejected") {
  CHECK_THROWS_AS(parse_delimited("", "t"), DataError);
}

TEST_CASE("round trip preserves kinds, names and values") {
  // Deterministic random tables, mixed kinds, awkward tokens.
  Pcg32 rng(2024);
  const char* tokens[] = {"plain", "with,comma", "with \"quote\"", "  padded  ", "line\nbreak"};
  for (int trial = 0; trial < 5; ++trial) {
    Table t;
    t.name = "trial";
    std::size_t rows = 1 + rng.uniform_below(40);
    Column num = Column::numeric("n");
    Column cat = Column::categorical("c");
    for (std::size_t r = 0; r < rows; ++r) {
      if (rng.uniform_below(10) == 0) {
        num.push_number(std::numeric_limits<double>::quiet_NaN());
      } else {
        num.push_number((static_cast<double>(rng.next()) - 2147483648.0) / 1024.0);
      }
      cat.push_token(tokens[rng.uniform_below(5)]);
    }
    t.add_column(std::move(num));
    t.add_column(std::move(cat));

    std::string text = format_delimited(t);
    Table back = parse_delimited(text, "trial");
    REQUIRE(back.columns.size() == 2);
    CHECK(back.row_count == rows);
    CHECK(back.columns[0].kind == ColumnKind::Numeric);
    CHECK(back.columns[1].kind == ColumnKind::Categorical);
    for (std::size_t r = 0; r < rows; ++r) {
      double a = t.columns[0].numbers[r];
      double b = back.columns[0].numbers[r];
      CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
      // Unquoted padding is trimmed on the way in; writer quotes padded
      // tokens, so the round trip is exact.
      CHECK(back.columns[1].token_at(r) == t.columns[1].token_at(r));
    }
    CHECK(format_delimited(back) == text);
  }
}

TEST_CASE("CMS-shaped sample file loads with expected kinds") {
  Table t = load_table(std::filesystem::path(BLINDFOLD_FIXTURE_DIR) / "inpatient_sample.csv",
                       CsvFormat{.categorical_overrides = {"Provider Id", "Provider Zip Code"}});
  CHECK(t.at("DRG Definition").kind == ColumnKind::Categorical);
  CHECK(t.at("Provider Id").kind == ColumnKind::Categorical);
  CHECK(t.at("Provider City").kind == ColumnKind::Categorical);
  CHECK(t.at("Provider State").kind == ColumnKind::Categorical);
  CHECK(t.at("Provider Zip Code").kind == ColumnKind::Categorical);
  CHECK(t.at("Total Discharges").kind == ColumnKind::Numeric);
  CHECK(t.at("Average Covered Charges").kind == ColumnKind::Numeric);
  CHECK(t.at("Average Total Payments").kind == ColumnKind::Numeric);
  CHECK(t.row_count > 0);
}

TEST_CASE("write_table is byte-stable") {
  Table t = parse_delimited("a,b\n1.5,x\n2.25,y\n", "t");
  namespace fs = std::filesystem;
  fs::path dir = fs::path(BLINDFOLD_TMP_DIR);
  fs::create_directories(dir);
  fs::path p1 = dir / "stable1.csv", p2 = dir / "stable2.csv";
  write_table(t, p1);
  write_table(t, p2);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  };
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1) == format_delimited(t));
}

TEST_SUITE_END();
