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

#include <stdexcept>
#include <string>
#include <string_view>

namespace blindfold {

inline constexpr std::string_view kVersion = "0.1.0";

/// Literal token a missing categorical value becomes. It is a regular
/// category from then on.
inline constexpr std::string_view kMissingToken = "«missing»";

/// Bad configuration: unparseable config files, unknown options,
/// unresolvable paths. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad data: parse failures, schema violations, shape mismatches.
/// CLI exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Strip leading/trailing spaces and tabs (and CR).
std::string_view trim(std::string_view s);

/// Parse a numeric token. Tolerates an optional leading '$' and
/// digit-grouping commas ("1,234.5"). Full-token match required;
/// only finite values accepted.
bool parse_number(std::string_view token, double& out);

/// Shortest round-trip representation, locale-independent.
/// NaN renders as the empty string (the missing marker on disk).
std::string format_double(double v);

/// Fixed decimals, locale-independent.
std::string format_fixed(double v, int precision);

}  // namespace blindfold
