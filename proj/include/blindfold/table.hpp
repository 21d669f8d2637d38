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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "blindfold/common.hpp"

namespace blindfold {

enum class ColumnKind { Categorical, Numeric };

/// One named column. Numeric values live in `numbers` (NaN = missing);
/// categorical values are dictionary codes into `cats`, which keeps the
/// categories in first-appearance order.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Categorical;
  std::vector<double> numbers;
  std::vector<std::int32_t> codes;
  std::vector<std::string> cats;
  std::unordered_map<std::string, std::int32_t> cat_index;

  static Column numeric(std::string name, std::vector<double> values = {});
  static Column categorical(std::string name);

  std::size_t size() const {
    return kind == ColumnKind::Numeric ? numbers.size() : codes.size();
  }

  /// Code for a token, adding it to the dictionary if new.
  std::int32_t intern(std::string_view token);

  /// Append a categorical value. Empty (post-trim) becomes the missing token.
  void push_token(std::string_view token);
  void push_number(double v);

  const std::string& token_at(std::size_t row) const { return cats[codes[row]]; }
  bool numeric_missing(std::size_t row) const;
};

/// A rectangular dataset: uniquely named columns of equal length.
struct Table {
  std::string name;
  std::vector<Column> columns;
  std::size_t row_count = 0;

  bool has(std::string_view col) const { return index_of(col).has_value(); }
  std::optional<std::size_t> index_of(std::string_view col) const;
  const Column& at(std::string_view col) const;
  Column& at(std::string_view col);

  /// Enforces name uniqueness and rectangularity.
  void add_column(Column c);

  /// Physical copy without one column — redaction leaves no way to read
  /// the removed values downstream.
  Table without(std::string_view col) const;

  std::vector<std::string> column_names() const;

  /// FNV-1a over column names, kinds and values. The table's own name is
  /// a label, not content, and is excluded.
  std::uint64_t content_hash() const;
};

}  // namespace blindfold
