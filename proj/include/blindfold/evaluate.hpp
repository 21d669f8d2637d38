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

#include "blindfold/discretize.hpp"
#include "blindfold/table.hpp"

namespace blindfold {

/// Deterministic stratified fold assignment.
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::int32_t> assignment;  // per-row fold index in [0, k)
};

/// Group rows by target label, shuffle each group with a seeded pcg32 and
/// deal round-robin; the dealing cursor carries across groups so overall
/// fold sizes are floor/ceil(n/k) and every fold is non-empty when n >= k.
/// The target must be categorical here (cross_validate stratifies numeric
/// targets through a global binning first).
FoldPlan make_folds(const Table& table, std::string_view target, int k, std::uint64_t seed);

/// Same, over raw stratum codes.
FoldPlan make_folds_codes(std::span<const std::int32_t> strata, int k, std::uint64_t seed);

/// Rows are truth, columns are predictions; label universe is the union of
/// both sequences in first-appearance order.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;  // L*L, row-major [truth][predicted]

  std::int64_t total() const;
  std::int64_t at(std::size_t truth, std::size_t predicted) const {
    return counts[truth * labels.size() + predicted];
  }
};

ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted);

/// 100 * trace / total.
double accuracy(const ConfusionMatrix& cm);

/// Cohen's Kappa: (p_o - p_e) / (1 - p_e); returns 0 when 1 - p_e < 1e-12.
double kappa(const ConfusionMatrix& cm);

/// The paper-style summary of a per-fold metric: worst, best, mean.
struct ScoreTriple {
  double minus = 0.0;
  double plus = 0.0;
  double mikro = 0.0;
};

ScoreTriple score_triple(std::span<const double> fold_values);

enum class BinScope { Fold, Global };
std::string_view to_string(BinScope s);
BinScope bin_scope_from_string(std::string_view s);

struct BinningConfig {
  BinMethod method = BinMethod::EqualFrequency;
  int bins = 10;
  BinScope scope = BinScope::Fold;
};

struct EvalConfig {
  int k = 10;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  BinningConfig binning;
};

struct FoldScore {
  double accuracy = 0.0;
  double kappa = 0.0;
};

struct CvResult {
  ScoreTriple accuracy;
  ScoreTriple kappa;
  std::vector<FoldScore> per_fold;  // ordered by fold index
  int target_label_count = 0;       // from the first fold's model
  int feature_count = 0;
  /// Audit copy of the cut points: the global discretizers, or fold 0's.
  std::vector<Discretizer> discretizers;
};

/// k-fold cross-validated Naive Bayes on `table` predicting `target` from
/// every other column. Numeric columns (target included) are discretized
/// with the configured binning; with fold scope the cut points are fit on
/// each training fold only.
CvResult cross_validate(const Table& table, std::string_view target, const EvalConfig& config);

}  // namespace blindfold
