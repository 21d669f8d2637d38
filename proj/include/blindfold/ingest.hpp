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
#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "blindfold/table.hpp"

namespace blindfold {

/// Canonical analysis columns of the joined charge table.
namespace schema {
inline constexpr const char* kDRG = "DRG";
inline constexpr const char* kProvider = "PROVIDER";
inline constexpr const char* kCity = "CITY";
inline constexpr const char* kState = "STATE";
inline constexpr const char* kZip = "ZIP";
inline constexpr const char* kInOrOut = "INorOUTPT";
inline constexpr const char* kDischarges = "Discharges";
inline constexpr const char* kChargePD = "Charge per Discharge";
inline constexpr const char* kPaymentPD = "Payment per Discharge";
inline constexpr const char* kLossPD = "Loss per Discharge";
inline constexpr const char* kTotalCharge = "Facility Total Charge";
inline constexpr const char* kTotalPayment = "Facility Total Payment";
inline constexpr const char* kTotalLoss = "Facility Total Loss";

/// The 13 canonical columns, in the order the derived table carries them.
const std::vector<std::string>& canonical_columns();

/// Fields harmonize_join maps from each source file (the other five
/// canonical columns are derived or the IN/OUT flag).
const std::vector<std::string>& mapped_fields();

bool is_categorical(std::string_view canonical);
}  // namespace schema

/// Column-name correspondence from canonical fields to one source file.
struct SourceMapping {
  std::unordered_map<std::string, std::string> fields;  // canonical -> source name
};

struct SchemaMapping {
  SourceMapping inpatient;
  SourceMapping outpatient;
  /// Store inpatient and outpatient service codes in the single DRG column
  /// with "DRG:" / "APC:" prefixes so the two code spaces cannot collide.
  bool prefix_codes = true;

  static SchemaMapping from_json(const nlohmann::json& j);
  static SchemaMapping load(const std::filesystem::path& path);

  /// Source columns that must stay categorical when loading (code-like
  /// fields such as ZIP or provider ids that would parse as numbers).
  std::vector<std::string> categorical_overrides(bool inpatient_side) const;
};

/// Stack both charge sets under canonical names, flagging each row IN/OUT.
/// Kinds must already match the schema (no silent coercion); a side given
/// as a zero-column table contributes nothing.
Table harmonize_join(const Table& inpatient, const Table& outpatient,
                     const SchemaMapping& mapping);

struct DeriveResult {
  Table table;
  std::size_t input_rows = 0;
  std::size_t dropped_low_discharges = 0;  // missing or < 1
  std::size_t dropped_missing_money = 0;

  std::size_t dropped() const { return dropped_low_discharges + dropped_missing_money; }
  std::string drop_report() const;
};

/// Add Loss per Discharge and the three facility totals (per-discharge
/// average times discharges, rounded to whole cents); drop rows whose
/// discharge count is missing/below one or whose monetary fields are
/// missing. Output columns are exactly the 13 canonical names.
DeriveResult derive_columns(const Table& joined);

struct ValidationCheck {
  std::string name;
  bool pass = true;
  std::size_t violations = 0;
  std::vector<std::size_t> rows;  // first 100 offenders
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass = true;
  std::string to_string() const;
};

/// Reporting-only check of the schema invariants: columns and kinds,
/// discharges >= 1, loss = charge - payment, totals consistent with the
/// per-discharge averages within 1 USD per discharge.
ValidationReport validate_schema(const Table& table);

}  // namespace blindfold
