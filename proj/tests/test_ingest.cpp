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
#include <set>

#include "blindfold/csv.hpp"
#include "blindfold/ingest.hpp"
#include "blindfold/rng.hpp"

using namespace blindfold;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("ingest");

namespace {

SchemaMapping identity_mapping() {
  SchemaMapping m;
  for (const auto& f : schema::mapped_fields()) {
    m.inpatient.fields[f] = f;
    m.outpatient.fields[f] = f;
  }
  return m;
}

Table side_table(const std::vector<std::string>& drg, const std::vector<double>& discharges,
                 const std::vector<double>& charge, const std::vector<double>& payment) {
  Table t;
  Column d = Column::categorical(schema::kDRG);
  for (const auto& v : drg) d.push_token(v);
  t.add_column(std::move(d));
  auto cat_const = [&](const char* name, const char* value) {
    Column c = Column::categorical(name);
    for (std::size_t i = 0; i < drg.size(); ++i) c.push_token(value);
    return c;
  };
  t.add_column(cat_const(schema::kProvider, "P1"));
  t.add_column(cat_const(schema::kCity, "SPRINGFIELD"));
  t.add_column(cat_const(schema::kState, "IL"));
  t.add_column(cat_const(schema::kZip, "62701"));
  t.add_column(Column::numeric(schema::kDischarges, discharges));
  t.add_column(Column::numeric(schema::kChargePD, charge));
  t.add_column(Column::numeric(schema::kPaymentPD, payment));
  return t;
}

SchemaMapping fixture_mapping() {
  return SchemaMapping::load(fs::path(BLINDFOLD_FIXTURE_DIR) / "cms_mapping.json");
}

Table load_fixture(const char* file, bool inpatient_side) {
  SchemaMapping m = fixture_mapping();
  CsvFormat fmt;
  fmt.categorical_overrides = m.categorical_overrides(inpatient_side);
  return load_table(fs::path(BLINDFOLD_FIXTURE_DIR) / file, fmt);
}

}  // namespace

TEST_CASE("join stacks rows, flags provenance and prefixes codes") {
  Table in = side_table({"039", "057"}, {5, 7}, {100, 200}, {40, 80});
  Table out = side_table({"0012", "0013", "0019"}, {3, 4, 5}, {10, 20, 30}, {4, 8, 12});
  Table joined = harmonize_join(in, out, identity_mapping());
  CHECK(joined.row_count == 5);
  const Column& flag = joined.at(schema::kInOrOut);
  CHECK(flag.token_at(0) == "IN");
  CHECK(flag.token_at(1) == "IN");
  CHECK(flag.token_at(2) == "OUT");
  CHECK(flag.token_at(3) == "OUT");
  CHECK(flag.token_at(4) == "OUT");
  CHECK(joined.at(schema::kDRG).token_at(0) == "DRG:039");
  CHECK(joined.at(schema::kDRG).token_at(2) == "APC:0012");
}

TEST_CASE("empty outpatient side leaves a relabeled inpatient table") {
  Table in = side_table({"039", "057"}, {5, 7}, {100, 200}, {40, 80});
  Table joined = harmonize_join(in, Table{}, identity_mapping());
  CHECK(joined.row_count == 2);
  CHECK(joined.at(schema::kInOrOut).token_at(0) == "IN");
  CHECK(joined.at(schema::kInOrOut).token_at(1) == "IN");
  CHECK(joined.at(schema::kChargePD).numbers == std::vector<double>{100, 200});
}

TEST_CASE("mapping to an absent column errors with its name") {
  Table in = side_table({"039"}, {5}, {100}, {40});
  SchemaMapping m = identity_mapping();
  m.inpatient.fields[schema::kZip] = "Zip Code (missing)";
  CHECK_THROWS_WITH_AS(harmonize_join(in, Table{}, m),
                       doctest::Contains("Zip Code (missing)"), DataError);
}

TEST_CASE("kind mismatch is not coerced") {
  Table in = side_table({"039"}, {5}, {100}, {40});
  // ZIP delivered as a numeric column.
  Table bad;
  for (const auto& c : in.columns) {
    if (c.name == schema::kZip) {
      bad.add_column(Column::numeric(schema::kZip, {62701}));
    } else {
      bad.add_column(c);
    }
  }
  CHECK_THROWS_WITH_AS(harmonize_join(bad, Table{}, identity_mapping()),
                       doctest::Contains("categorical override"), DataError);
}

TEST_CASE("join conservation: counts kept, non-DRG values unchanged") {
  Pcg32 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    std::size_t n_in = 1 + rng.uniform_below(20), n_out = 1 + rng.uniform_below(20);
    auto mk = [&](std::size_t n) {
      std::vector<std::string> drg;
      std::vector<double> d, c, p;
      for (std::size_t i = 0; i < n; ++i) {
        drg.push_back("code" + std::to_string(rng.uniform_below(6)));
        d.push_back(1 + rng.uniform_below(50));
        c.push_back(rng.uniform_below(100000) / 7.0);
        p.push_back(rng.uniform_below(50000) / 7.0);
      }
      return side_table(drg, d, c, p);
    };
    Table in = mk(n_in), out = mk(n_out);
    Table joined = harmonize_join(in, out, identity_mapping());
    CHECK(joined.row_count == n_in + n_out);
    for (std::size_t r = 0; r < n_in; ++r) {
      CHECK(joined.at(schema::kChargePD).numbers[r] == in.at(schema::kChargePD).numbers[r]);
      CHECK(joined.at(schema::kZip).token_at(r) == in.at(schema::kZip).token_at(r));
      CHECK(joined.at(schema::kDRG).token_at(r) == "DRG:" + in.at(schema::kDRG).token_at(r));
    }
    for (std::size_t r = 0; r < n_out; ++r) {
      std::size_t jr = n_in + r;
      CHECK(joined.at(schema::kPaymentPD).numbers[jr] ==
            out.at(schema::kPaymentPD).numbers[r]);
      CHECK(joined.at(schema::kDRG).token_at(jr) == "APC:" + out.at(schema::kDRG).token_at(r));
    }
  }
}

TEST_CASE("derive arithmetic from the definitions") {
  Table in = side_table({"039"}, {5}, {10000}, {7000});
  Table joined = harmonize_join(in, Table{}, identity_mapping());
  DeriveResult d = derive_columns(joined);
  REQUIRE(d.table.row_count == 1);
  CHECK(d.table.at(schema::kLossPD).numbers[0] == 3000.0);
  CHECK(d.table.at(schema::kTotalCharge).numbers[0] == 50000.0);
  CHECK(d.table.at(schema::kTotalPayment).numbers[0] == 35000.0);
  CHECK(d.table.at(schema::kTotalLoss).numbers[0] == 15000.0);
}

TEST_CASE("payment equals charge means zero loss") {
  Table in = side_table({"039"}, {7}, {1234.56}, {1234.56});
  DeriveResult d = derive_columns(harmonize_join(in, Table{}, identity_mapping()));
  CHECK(d.table.at(schema::kLossPD).numbers[0] == 0.0);
  CHECK(d.table.at(schema::kTotalLoss).numbers[0] == 0.0);
}

TEST_CASE("derive drops zero/missing discharges and missing money, and reports") {
  double nan = std::numeric_limits<double>::quiet_NaN();
  Table in = side_table({"a", "b", "c", "d", "e"}, {5, 0, nan, 3, 2},
                        {100, 100, 100, nan, 100}, {40, 40, 40, 40, nan});
  DeriveResult d = derive_columns(harmonize_join(in, Table{}, identity_mapping()));
  CHECK(d.input_rows == 5);
  CHECK(d.table.row_count == 1);
  CHECK(d.dropped_low_discharges == 2);
  CHECK(d.dropped_missing_money == 2);
  CHECK(d.drop_report().find("dropped") != std::string::npos);
}

TEST_CASE("derived column set is exactly the 13 canonical names") {
  Table in = side_table({"039"}, {5}, {10000}, {7000});
  DeriveResult d = derive_columns(harmonize_join(in, Table{}, identity_mapping()));
  auto names = d.table.column_names();
  CHECK(names == schema::canonical_columns());
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == 13);
}

TEST_CASE("derive requires its source columns") {
  Table in = side_table({"039"}, {5}, {10000}, {7000});
  Table joined = harmonize_join(in, Table{}, identity_mapping());
  CHECK_THROWS_WITH_AS(derive_columns(joined.without(schema::kDischarges)),
                       doctest::Contains(schema::kDischarges), DataError);
}

TEST_CASE("validator passes a derived table and flags constructed violations") {
  Table in = side_table({"039", "057", "064"}, {5, 9, 2}, {10000, 500, 777.77},
                        {7000, 200, 333.33});
  DeriveResult d = derive_columns(harmonize_join(in, Table{}, identity_mapping()));
  ValidationReport clean = validate_schema(d.table);
  CHECK(clean.all_pass);

  Table broken = d.table;
  broken.at(schema::kTotalCharge).numbers[1] += 50.0;  // 50 USD off on 9 discharges
  broken.at(schema::kLossPD).numbers[2] += 1.0;
  ValidationReport rep = validate_schema(broken);
  CHECK_FALSE(rep.all_pass);
  bool totals_flagged = false, loss_flagged = false;
  for (const auto& check : rep.checks) {
    if (check.name == "totals-match-per-discharge-averages") {
      totals_flagged = !check.pass;
      CHECK(check.rows == std::vector<std::size_t>{1});
    }
    if (check.name == "loss-equals-charge-minus-payment") {
      loss_flagged = !check.pass;
      CHECK(check.rows == std::vector<std::size_t>{2});
    }
  }
  CHECK(totals_flagged);
  CHECK(loss_flagged);
}

TEST_CASE("validator flags discharges below one") {
  Table in = side_table({"039"}, {5}, {10000}, {7000});
  DeriveResult d = derive_columns(harmonize_join(in, Table{}, identity_mapping()));
  Table broken = d.table;
  broken.at(schema::kDischarges).numbers[0] = 0.0;
  ValidationReport rep = validate_schema(broken);
  CHECK_FALSE(rep.all_pass);
}

TEST_CASE("fixture files flow end to end with full loss consistency") {
  Table in = load_fixture("inpatient_sample.csv", true);
  Table out = load_fixture("outpatient_sample.csv", false);
  Table joined = harmonize_join(in, out, fixture_mapping());
  CHECK(joined.row_count == in.row_count + out.row_count);

  DeriveResult d = derive_columns(joined);
  CHECK(d.dropped() == 2);  // the planted zero-discharge and missing-payment rows
  CHECK(d.table.row_count == joined.row_count - 2);

  ValidationReport rep = validate_schema(d.table);
  CHECK(rep.all_pass);
  // Loss consistency rate on this (constructed, CMS-shaped) data: 100% >= 99.9%.
  for (const auto& check : rep.checks)
    if (check.name == "loss-equals-charge-minus-payment") CHECK(check.violations == 0);

  // ZIP stays textual with its leading zeros.
  bool found_leading_zero = false;
  const Column& zip = d.table.at(schema::kZip);
  for (std::size_t r = 0; r < d.table.row_count; ++r)
    if (zip.token_at(r) == "04102") found_leading_zero = true;
  CHECK(found_leading_zero);
}

TEST_CASE("derivation is deterministic") {
  Table in = load_fixture("inpatient_sample.csv", true);
  Table out = load_fixture("outpatient_sample.csv", false);
  Table a = derive_columns(harmonize_join(in, out, fixture_mapping())).table;
  Table b = derive_columns(harmonize_join(in, out, fixture_mapping())).table;
  CHECK(a.content_hash() == b.content_hash());
  CHECK(format_delimited(a) == format_delimited(b));
}

TEST_SUITE_END();
