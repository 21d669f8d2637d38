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
#include "blindfold/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace blindfold {

namespace {

struct RawField {
  std::string text;
  bool quoted = false;
};

using RawRecord = std::vector<RawField>;

// Quote-aware record splitter. Quoted fields may contain the delimiter,
// doubled quotes and newlines.
std::vector<RawRecord> split_records(std::string_view text, const CsvFormat& fmt) {
  std::vector<RawRecord> records;
  RawRecord record;
  RawField field;
  bool in_quotes = false;
  bool any_char_in_record = false;

  auto end_field = [&]() {
    record.push_back(std::move(field));
    field = RawField{};
  };
  auto end_record = [&]() {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any_char_in_record = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == fmt.quote) {
        if (i + 1 < text.size() && text[i + 1] == fmt.quote) {
          field.text.push_back(fmt.quote);
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.text.push_back(c);
      }
      any_char_in_record = true;
      continue;
    }
    if (c == fmt.quote) {
      in_quotes = true;
      field.quoted = true;
      any_char_in_record = true;
    } else if (c == fmt.delimiter) {
      end_field();
      any_char_in_record = true;
    } else if (c == '\n') {
      if (any_char_in_record || !record.empty() || !field.text.empty()) end_record();
    } else if (c == '\r') {
      // consumed; \r\n and lone \r both end the record at the \n / next char
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      if (any_char_in_record || !record.empty() || !field.text.empty()) end_record();
    } else {
      field.text.push_back(c);
      any_char_in_record = true;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field at end of input");
  if (any_char_in_record || !record.empty()) end_record();
  return records;
}

std::string field_value(const RawField& f) {
  if (f.quoted) return f.text;  // quotes protect content verbatim
  return std::string(trim(f.text));
}

bool needs_quoting(std::string_view s, const CsvFormat& fmt) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ') return true;
  return s.find_first_of(std::string{fmt.delimiter, fmt.quote, '\n', '\r'}) !=
         std::string_view::npos;
}

void append_field(std::string& out, std::string_view s, const CsvFormat& fmt) {
  if (!needs_quoting(s, fmt)) {
    out.append(s);
    return;
  }
  out.push_back(fmt.quote);
  for (char c : s) {
    if (c == fmt.quote) out.push_back(fmt.quote);
    out.push_back(c);
  }
  out.push_back(fmt.quote);
}

}  // namespace

Table parse_delimited(std::string_view text, std::string table_name, const CsvFormat& fmt) {
  auto records = split_records(text, fmt);
  if (records.empty()) throw DataError("'" + table_name + "': no rows to parse");

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (fmt.header) {
    for (const auto& f : records[0]) header.push_back(field_value(f));
    first_data = 1;
    std::unordered_set<std::string> seen;
    for (const auto& h : header) {
      if (!seen.insert(h).second)
        throw DataError("'" + table_name + "': duplicate header name '" + h + "'");
    }
  } else {
    for (std::size_t i = 0; i < records[0].size(); ++i)
      header.push_back("col_" + std::to_string(i));
  }

  const std::size_t ncols = header.size();
  std::size_t nrows = records.size() - first_data;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    if (records[r].size() != ncols) {
      throw DataError("'" + table_name + "': row " + std::to_string(r - first_data + 1) +
                      " has " + std::to_string(records[r].size()) + " fields, expected " +
                      std::to_string(ncols));
    }
  }

  // Column-wise kind inference, then a single typed pass.
  Table table;
  table.name = std::move(table_name);
  for (std::size_t c = 0; c < ncols; ++c) {
    bool forced_cat = std::find(fmt.categorical_overrides.begin(),
                                fmt.categorical_overrides.end(),
                                header[c]) != fmt.categorical_overrides.end();
    bool all_parse = !forced_cat;
    std::size_t non_missing = 0;
    double parsed = 0.0;
    if (all_parse) {
      for (std::size_t r = first_data; r < records.size(); ++r) {
        std::string v = field_value(records[r][c]);
        if (trim(v).empty()) continue;
        ++non_missing;
        if (!parse_number(v, parsed)) {
          all_parse = false;
          break;
        }
      }
    }
    bool numeric = all_parse && non_missing > 0;

    Column col = numeric ? Column::numeric(header[c]) : Column::categorical(header[c]);
    if (numeric) col.numbers.reserve(nrows);
    for (std::size_t r = first_data; r < records.size(); ++r) {
      std::string v = field_value(records[r][c]);
      if (numeric) {
        if (trim(v).empty()) {
          col.push_number(std::numeric_limits<double>::quiet_NaN());
        } else {
          parse_number(v, parsed);
          col.push_number(parsed);
        }
      } else {
        col.push_token(v);
      }
    }
    table.add_column(std::move(col));
  }
  return table;
}

Table load_table(const std::filesystem::path& path, const CsvFormat& fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_delimited(buf.str(), path.stem().string(), fmt);
}

std::string format_delimited(const Table& table, const CsvFormat& fmt) {
  std::string out;
  if (fmt.header) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out.push_back(fmt.delimiter);
      append_field(out, table.columns[c].name, fmt);
    }
    out.push_back('\n');
  }
  for (std::size_t r = 0; r < table.row_count; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out.push_back(fmt.delimiter);
      const Column& col = table.columns[c];
      if (col.kind == ColumnKind::Numeric) {
        append_field(out, format_double(col.numbers[r]), fmt);
      } else {
        append_field(out, col.token_at(r), fmt);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void write_table(const Table& table, const std::filesystem::path& path, const CsvFormat& fmt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << format_delimited(table, fmt);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace blindfold
