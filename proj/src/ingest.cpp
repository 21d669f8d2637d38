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
#include "blindfold/ingest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace blindfold {

namespace schema {

const std::vector<std::string>& canonical_columns() {
  static const std::vector<std::string> cols = {
      kDRG,    kProvider,  kCity,      kState,  kZip,         kInOrOut,      kDischarges,
      kChargePD, kPaymentPD, kLossPD, kTotalCharge, kTotalPayment, kTotalLoss};
  return cols;
}

const std::vector<std::string>& mapped_fields() {
  static const std::vector<std::string> fields = {kDRG,     kProvider,   kCity,      kState,
                                                  kZip,     kDischarges, kChargePD, kPaymentPD};
  return fields;
}

bool is_categorical(std::string_view canonical) {
  return canonical == kDRG || canonical == kProvider || canonical == kCity ||
         canonical == kState || canonical == kZip || canonical == kInOrOut;
}

}  // namespace schema

SchemaMapping SchemaMapping::from_json(const nlohmann::json& j) {
  SchemaMapping m;
  auto read_side = [&](const char* key, SourceMapping& side) {
    if (!j.contains(key) || !j.at(key).is_object())
      throw ConfigError(std::string("mapping: missing object '") + key + "'");
    for (const auto& field : schema::mapped_fields()) {
      if (!j.at(key).contains(field))
        throw ConfigError(std::string("mapping: '") + key + "' lacks field '" + field + "'");
      side.fields[field] = j.at(key).at(field).get<std::string>();
    }
  };
  read_side("inpatient", m.inpatient);
  read_side("outpatient", m.outpatient);
  m.prefix_codes = j.value("prefix_codes", true);
  return m;
}

SchemaMapping SchemaMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read mapping file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("mapping file '" + path.string() + "': " + e.what());
  }
  return from_json(j);
}

std::vector<std::string> SchemaMapping::categorical_overrides(bool inpatient_side) const {
  const SourceMapping& side = inpatient_side ? inpatient : outpatient;
  std::vector<std::string> out;
  for (const auto& field : schema::mapped_fields()) {
    if (schema::is_categorical(field)) out.push_back(side.fields.at(field));
  }
  return out;
}

namespace {

void append_side(Table& result, const Table& source, const SourceMapping& side,
                 const char* side_name, const char* flag, const char* code_prefix) {
  if (source.columns.empty()) return;

  for (const auto& field : schema::mapped_fields()) {
    const std::string& src_name = side.fields.at(field);
    if (!source.has(src_name))
      throw DataError(std::string(side_name) + " table lacks mapped column '" + src_name +
                      "' (for " + field + ")");
    const Column& src = source.at(src_name);
    bool want_cat = schema::is_categorical(field);
    if (want_cat && src.kind != ColumnKind::Categorical)
      throw DataError(std::string(side_name) + " column '" + src_name + "' is numeric but " +
                      field + " is categorical; load it with a categorical override");
    if (!want_cat && src.kind != ColumnKind::Numeric)
      throw DataError(std::string(side_name) + " column '" + src_name +
                      "' is not numeric as required for " + field);
  }

  struct Wire {
    const Column* src;
    Column* dst;
    bool prefix_drg;
  };
  std::vector<Wire> wires;
  for (const auto& field : schema::mapped_fields()) {
    wires.push_back({&source.at(side.fields.at(field)), &result.at(field),
                     field == schema::kDRG && code_prefix[0] != '\0'});
  }
  Column& flag_col = result.at(schema::kInOrOut);

  for (std::size_t r = 0; r < source.row_count; ++r) {
    for (const Wire& w : wires) {
      if (w.dst->kind == ColumnKind::Numeric) {
        w.dst->push_number(w.src->numbers[r]);
      } else if (w.prefix_drg) {
        w.dst->push_token(std::string(code_prefix) + w.src->token_at(r));
      } else {
        w.dst->push_token(w.src->token_at(r));
      }
    }
    flag_col.push_token(flag);
  }
}

double round_cents(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

Table harmonize_join(const Table& inpatient, const Table& outpatient,
                     const SchemaMapping& mapping) {
  Table result;
  result.name = "joined";
  for (const auto& field : schema::mapped_fields()) {
    result.columns.push_back(schema::is_categorical(field) ? Column::categorical(field)
                                                           : Column::numeric(field));
  }
  result.columns.push_back(Column::categorical(schema::kInOrOut));

  append_side(result, inpatient, mapping.inpatient, "inpatient", "IN",
              mapping.prefix_codes ? "DRG:" : "");
  append_side(result, outpatient, mapping.outpatient, "outpatient", "OUT",
              mapping.prefix_codes ? "APC:" : "");

  result.row_count = result.columns.front().size();
  return result;
}

DeriveResult derive_columns(const Table& joined) {
  for (const auto& field : schema::mapped_fields()) {
    if (!joined.has(field))
      throw DataError("derive_columns: missing required column '" + field + "'");
  }
  if (!joined.has(schema::kInOrOut))
    throw DataError(std::string("derive_columns: missing required column '") +
                    schema::kInOrOut + "'");
  const Column& discharges = joined.at(schema::kDischarges);
  const Column& charge = joined.at(schema::kChargePD);
  const Column& payment = joined.at(schema::kPaymentPD);
  for (const Column* c : {&discharges, &charge, &payment}) {
    if (c->kind != ColumnKind::Numeric)
      throw DataError("derive_columns: column '" + c->name + "' must be numeric");
  }

  DeriveResult out;
  out.input_rows = joined.row_count;

  std::vector<std::size_t> keep;
  keep.reserve(joined.row_count);
  for (std::size_t r = 0; r < joined.row_count; ++r) {
    double d = discharges.numbers[r];
    if (std::isnan(d) || d < 1.0) {
      ++out.dropped_low_discharges;
      continue;
    }
    if (std::isnan(charge.numbers[r]) || std::isnan(payment.numbers[r])) {
      ++out.dropped_missing_money;
      continue;
    }
    keep.push_back(r);
  }

  Table& t = out.table;
  t.name = "derived";
  for (const auto& name : schema::canonical_columns()) {
    bool derived = !joined.has(name);
    if (derived) {
      t.columns.push_back(Column::numeric(name));
      continue;
    }
    const Column& src = joined.at(name);
    Column dst = src.kind == ColumnKind::Numeric ? Column::numeric(name)
                                                 : Column::categorical(name);
    for (std::size_t r : keep) {
      if (src.kind == ColumnKind::Numeric) {
        dst.push_number(src.numbers[r]);
      } else {
        dst.push_token(src.token_at(r));
      }
    }
    t.columns.push_back(std::move(dst));
  }

  Column& loss = t.at(schema::kLossPD);
  Column& total_charge = t.at(schema::kTotalCharge);
  Column& total_payment = t.at(schema::kTotalPayment);
  Column& total_loss = t.at(schema::kTotalLoss);
  for (std::size_t r : keep) {
    double d = discharges.numbers[r];
    double c = charge.numbers[r];
    double p = payment.numbers[r];
    double l = c - p;
    loss.push_number(l);
    total_charge.push_number(round_cents(c * d));
    total_payment.push_number(round_cents(p * d));
    total_loss.push_number(round_cents(l * d));
  }

  t.row_count = keep.size();
  return out;
}

std::string DeriveResult::drop_report() const {
  std::ostringstream os;
  os << "rows in:                     " << input_rows << "\n"
     << "rows retained:               " << table.row_count << "\n"
     << "dropped (discharges < 1 or missing): " << dropped_low_discharges << "\n"
     << "dropped (missing monetary fields):   " << dropped_missing_money << "\n";
  return os.str();
}

namespace {

constexpr std::size_t kMaxReportedRows = 100;

void flag(ValidationCheck& check, std::size_t row) {
  check.pass = false;
  ++check.violations;
  if (check.rows.size() < kMaxReportedRows) check.rows.push_back(row);
}

}  // namespace

ValidationReport validate_schema(const Table& table) {
  ValidationReport report;

  ValidationCheck columns_present{"columns-present-and-typed"};
  for (const auto& name : schema::canonical_columns()) {
    if (!table.has(name)) {
      columns_present.pass = false;
      ++columns_present.violations;
      continue;
    }
    bool want_cat = schema::is_categorical(name);
    bool is_cat = table.at(name).kind == ColumnKind::Categorical;
    if (want_cat != is_cat) {
      columns_present.pass = false;
      ++columns_present.violations;
    }
  }
  report.checks.push_back(columns_present);
  if (!columns_present.pass) {
    report.all_pass = false;
    return report;
  }

  ValidationCheck rectangular{"rectangular"};
  for (const auto& c : table.columns) {
    if (c.size() != table.row_count) {
      rectangular.pass = false;
      ++rectangular.violations;
    }
  }
  report.checks.push_back(rectangular);

  const auto& d = table.at(schema::kDischarges).numbers;
  const auto& charge = table.at(schema::kChargePD).numbers;
  const auto& payment = table.at(schema::kPaymentPD).numbers;
  const auto& loss = table.at(schema::kLossPD).numbers;
  const auto& tc = table.at(schema::kTotalCharge).numbers;
  const auto& tp = table.at(schema::kTotalPayment).numbers;
  const auto& tl = table.at(schema::kTotalLoss).numbers;

  ValidationCheck discharges_ok{"discharges-at-least-one"};
  ValidationCheck loss_ok{"loss-equals-charge-minus-payment"};
  ValidationCheck totals_ok{"totals-match-per-discharge-averages"};
  for (std::size_t r = 0; r < table.row_count; ++r) {
    if (std::isnan(d[r]) || d[r] < 1.0) flag(discharges_ok, r);
    if (std::abs(loss[r] - (charge[r] - payment[r])) > 0.005) flag(loss_ok, r);
    if (!std::isnan(d[r]) && d[r] >= 1.0) {
      bool bad = std::abs(tc[r] / d[r] - charge[r]) > 1.0 ||
                 std::abs(tp[r] / d[r] - payment[r]) > 1.0 ||
                 std::abs(tl[r] / d[r] - loss[r]) > 1.0;
      if (bad) flag(totals_ok, r);
    }
  }
  report.checks.push_back(discharges_ok);
  report.checks.push_back(loss_ok);
  report.checks.push_back(totals_ok);

  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass) {
      os << " (" << c.violations << " violations; rows";
      for (std::size_t r : c.rows) os << ' ' << r;
      os << ')';
    }
    os << '\n';
  }
  os << (all_pass ? "all checks passed" : "schema validation FAILED") << '\n';
  return os.str();
}

}  // namespace blindfold
