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
#include "blindfold/table.hpp"

#include <cmath>

#include "blindfold/rng.hpp"

namespace blindfold {

Column Column::numeric(std::string name, std::vector<double> values) {
  Column c;
  c.name = std::move(name);
  c.kind = ColumnKind::Numeric;
  c.numbers = std::move(values);
  return c;
}

Column Column::categorical(std::string name) {
  Column c;
  c.name = std::move(name);
  c.kind = ColumnKind::Categorical;
  return c;
}

std::int32_t Column::intern(std::string_view token) {
  auto it = cat_index.find(std::string(token));
  if (it != cat_index.end()) return it->second;
  auto code = static_cast<std::int32_t>(cats.size());
  cats.emplace_back(token);
  cat_index.emplace(cats.back(), code);
  return code;
}

void Column::push_token(std::string_view token) {
  std::string_view t = trim(token);
  codes.push_back(intern(t.empty() ? kMissingToken : t));
}

void Column::push_number(double v) { numbers.push_back(v); }

bool Column::numeric_missing(std::size_t row) const {
  return kind == ColumnKind::Numeric && std::isnan(numbers[row]);
}

std::optional<std::size_t> Table::index_of(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == col) return i;
  }
  return std::nullopt;
}

const Column& Table::at(std::string_view col) const {
  auto i = index_of(col);
  if (!i) throw DataError("table '" + name + "' has no column '" + std::string(col) + "'");
  return columns[*i];
}

Column& Table::at(std::string_view col) {
  auto i = index_of(col);
  if (!i) throw DataError("table '" + name + "' has no column '" + std::string(col) + "'");
  return columns[*i];
}

void Table::add_column(Column c) {
  if (has(c.name)) throw DataError("duplicate column name '" + c.name + "'");
  if (columns.empty()) {
    row_count = c.size();
  } else if (c.size() != row_count) {
    throw DataError("column '" + c.name + "' has " + std::to_string(c.size()) +
                    " values, table has " + std::to_string(row_count) + " rows");
  }
  columns.push_back(std::move(c));
}

Table Table::without(std::string_view col) const {
  Table t;
  t.name = name;
  t.row_count = row_count;
  for (const auto& c : columns) {
    if (c.name != col) t.columns.push_back(c);
  }
  return t;
}

std::vector<std::string> Table::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (const auto& c : columns) names.push_back(c.name);
  return names;
}

std::uint64_t Table::content_hash() const {
  std::uint64_t h = kFnvOffset;
  auto sep = std::string_view("\x1e", 1);
  for (const auto& c : columns) {
    h = fnv1a64(c.name, h);
    h = fnv1a64(c.kind == ColumnKind::Numeric ? "num" : "cat", h);
    if (c.kind == ColumnKind::Numeric) {
      for (double v : c.numbers) {
        h = fnv1a64(format_double(v), h);
        h = fnv1a64(sep, h);
      }
    } else {
      for (std::int32_t code : c.codes) {
        h = fnv1a64(c.cats[code], h);
        h = fnv1a64(sep, h);
      }
    }
    h = fnv1a64("\x1d", h);
  }
  return h;
}

}  // namespace blindfold
