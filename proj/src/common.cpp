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
#include "blindfold/common.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace blindfold {

std::string_view trim(std::string_view s) {
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && issp(s.front())) s.remove_prefix(1);
  while (!s.empty() && issp(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  if (token.front() == '$') token.remove_prefix(1);
  if (token.empty()) return false;

  auto isdig = [](char c) { return c >= '0' && c <= '9'; };
  std::string cleaned;
  cleaned.reserve(token.size());
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] == ',' && i > 0 && i + 1 < token.size() && isdig(token[i - 1]) &&
        isdig(token[i + 1])) {
      continue;  // digit-grouping comma
    }
    cleaned.push_back(token[i]);
  }

  const char* begin = cleaned.data();
  const char* end = begin + cleaned.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return false;
  out = value;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_fixed(double v, int precision) {
  char buf[96];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, ptr);
}

}  // namespace blindfold
