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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "blindfold/table.hpp"

namespace blindfold {

struct CsvFormat {
  char delimiter = ',';
  char quote = '"';
  bool header = true;
  /// Columns forced categorical even when every token parses as a number
  /// (ZIP codes, provider ids and similar code-like text).
  std::vector<std::string> categorical_overrides;
};

/// Parse delimited text. Column kinds are inferred: numeric iff the column
/// has at least one non-missing value and every non-missing value parses as
/// a number. Empty fields are missing. Unquoted fields are whitespace-trimmed.
/// Errors: ragged rows (named by 1-based data row), duplicate header names.
Table parse_delimited(std::string_view text, std::string table_name, const CsvFormat& fmt = {});

/// Read and parse a delimited file; the table is named after the file stem.
Table load_table(const std::filesystem::path& path, const CsvFormat& fmt = {});

/// Serialize a table. Numerics use shortest round-trip formatting
/// (NaN becomes an empty field); fields are quoted only when needed.
std::string format_delimited(const Table& table, const CsvFormat& fmt = {});

void write_table(const Table& table, const std::filesystem::path& path,
                 const CsvFormat& fmt = {});

}  // namespace blindfold
