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
#include "blindfold/discretize.hpp"

#include <algorithm>
#include <cmath>

namespace blindfold {

std::string_view to_string(BinMethod m) {
  return m == BinMethod::EqualFrequency ? "equal-frequency" : "equal-width";
}

BinMethod bin_method_from_string(std::string_view s) {
  if (s == "equal-frequency") return BinMethod::EqualFrequency;
  if (s == "equal-width") return BinMethod::EqualWidth;
  throw ConfigError("unknown binning method '" + std::string(s) +
                    "' (expected equal-frequency or equal-width)");
}

namespace {

// Linear-interpolation quantile over sorted values (h = (n-1)q).
double quantile(const std::vector<double>& sorted, double q) {
  double h = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

int Discretizer::bin_of(double v) const {
  if (std::isnan(v)) return -1;
  auto it = std::lower_bound(edges.begin(), edges.end(), v);  // first edge >= v
  return static_cast<int>(it - edges.begin());
}

Discretizer fit_bins(const Column& column, BinMethod method, int k,
                     std::span<const std::int32_t> rows, std::string fitted_on) {
  if (column.kind != ColumnKind::Numeric)
    throw DataError("fit_bins: column '" + column.name + "' is not numeric");
  if (k < 2) throw DataError("fit_bins: need k >= 2, got " + std::to_string(k));

  std::vector<double> values;
  if (rows.empty()) {
    values.reserve(column.numbers.size());
    for (double v : column.numbers)
      if (!std::isnan(v)) values.push_back(v);
  } else {
    values.reserve(rows.size());
    for (std::int32_t r : rows) {
      double v = column.numbers[r];
      if (!std::isnan(v)) values.push_back(v);
    }
  }
  if (values.empty())
    throw DataError("fit_bins: column '" + column.name + "' has no non-missing values");

  std::sort(values.begin(), values.end());
  const double lo = values.front();
  const double hi = values.back();

  Discretizer d;
  d.column_name = column.name;
  d.method = method;
  d.requested_bins = k;
  d.fitted_on = std::move(fitted_on);

  std::vector<double> candidates;
  candidates.reserve(k - 1);
  if (method == BinMethod::EqualWidth) {
    double span = hi - lo;
    for (int i = 1; i < k; ++i)
      candidates.push_back(lo + span * static_cast<double>(i) / static_cast<double>(k));
  } else {
    for (int i = 1; i < k; ++i)
      candidates.push_back(quantile(values, static_cast<double>(i) / static_cast<double>(k)));
  }

  if (method == BinMethod::EqualWidth) {
    // Keep the even spacing; merge float collapses and drop edges at/above
    // the maximum (a constant column ends up with zero edges).
    for (double e : candidates) {
      if (e >= hi) continue;
      if (d.edges.empty() || e > d.edges.back()) d.edges.push_back(e);
    }
  } else {
    // Merge duplicate quantiles and drop any edge whose bin would hold no
    // training value, so every in-sample bin is populated.
    double prev = -std::numeric_limits<double>::infinity();
    for (double e : candidates) {
      if (e >= hi) continue;
      if (!d.edges.empty() && e <= d.edges.back()) continue;
      auto first_above_prev = std::upper_bound(values.begin(), values.end(), prev);
      bool occupied = first_above_prev != values.end() && *first_above_prev <= e;
      if (!occupied) continue;
      d.edges.push_back(e);
      prev = e;
    }
  }

  for (std::size_t i = 1; i < d.edges.size(); ++i) {
    if (!(d.edges[i - 1] < d.edges[i]))
      throw DataError("fit_bins: edges not strictly increasing for '" + column.name + "'");
  }
  return d;
}

Column apply(const Discretizer& d, const Column& column) {
  if (column.kind != ColumnKind::Numeric)
    throw DataError("apply: column '" + column.name + "' is not numeric");
  Column out = Column::categorical(column.name);
  // Pre-intern bin labels so codes coincide with bin indices.
  for (int b = 0; b < d.bin_count(); ++b) out.intern(Discretizer::bin_label(b));
  out.codes.reserve(column.numbers.size());
  for (double v : column.numbers) {
    int b = d.bin_of(v);
    if (b < 0) {
      out.codes.push_back(out.intern(kMissingToken));
    } else {
      out.codes.push_back(b);
    }
  }
  return out;
}

}  // namespace blindfold
