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
#include <span>
#include <string>
#include <vector>

#include "blindfold/table.hpp"

namespace blindfold {

enum class BinMethod { EqualFrequency, EqualWidth };

std::string_view to_string(BinMethod m);
BinMethod bin_method_from_string(std::string_view s);

/// Per-column cut points mapping numbers onto ordinal bin labels.
/// Intervals are (-inf, e1], (e1, e2], ...; values beyond the training
/// range clamp into the first/last bin, so apply() is total.
struct Discretizer {
  std::string column_name;
  BinMethod method = BinMethod::EqualFrequency;
  int requested_bins = 0;
  std::vector<double> edges;  // strictly increasing
  std::string fitted_on;      // row-scope descriptor, e.g. "all-rows", "fold-3-train"

  int bin_count() const { return static_cast<int>(edges.size()) + 1; }

  /// Bin index for a finite value; -1 for NaN (missing).
  int bin_of(double v) const;

  static std::string bin_label(int bin) { return "bin_" + std::to_string(bin); }
};

/// Fit cut points on the given rows of a numeric column (all rows when
/// `rows` is empty). Equal-width: k-1 evenly spaced edges across the
/// observed [min, max]. Equal-frequency: edges at the i/k quantiles
/// (linear interpolation between order statistics) with duplicates merged
/// and edges that would leave an in-sample bin empty dropped.
/// A constant column yields zero edges (a single bin).
/// Errors: k < 2, no non-missing values.
Discretizer fit_bins(const Column& column, BinMethod method, int k,
                     std::span<const std::int32_t> rows = {},
                     std::string fitted_on = "all-rows");

/// Map a whole numeric column to a categorical column of bin labels.
/// Missing values become the regular missing token.
Column apply(const Discretizer& d, const Column& column);

}  // namespace blindfold
