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

#include <string>
#include <vector>

#include "blindfold/evaluate.hpp"
#include "blindfold/table.hpp"

namespace blindfold {

/// Which columns get blinded (matrix rows) and which get predicted
/// (matrix columns), plus the shared evaluation knobs.
struct RedactionPlan {
  std::vector<std::string> blind_set;
  std::vector<std::string> target_set;
  EvalConfig config;
};

/// The standard Medicare charge-table plan: 13 blinded columns by 10
/// predicted columns. Errors name the first missing schema column.
RedactionPlan plan_default_medicare(const Table& table);

struct CellScores {
  bool na = false;
  ScoreTriple accuracy;
  ScoreTriple kappa;
  std::vector<FoldScore> per_fold;
  int target_label_count = 0;
  int feature_count = 0;
  std::vector<Discretizer> discretizers;
};

/// Grid of cell scores; rows follow blind_set order, columns target_set
/// order; a cell is NA exactly when the blinded column is the target.
struct RedactionMatrix {
  std::vector<std::string> blind_labels;
  std::vector<std::string> target_labels;
  std::vector<CellScores> cells;  // row-major

  const CellScores& cell(std::size_t row, std::size_t col) const {
    return cells[row * target_labels.size() + col];
  }
  CellScores& cell(std::size_t row, std::size_t col) {
    return cells[row * target_labels.size() + col];
  }
  std::size_t computed_cells() const;
};

/// Score one (blinded, target) pair: physically remove the blinded column,
/// then cross-validate prediction of the target from everything left.
/// An empty remaining feature set is fine — the model degrades to
/// prior-only prediction.
CellScores run_cell(const Table& table, std::string_view blind, std::string_view target,
                    const EvalConfig& config);

/// Compute the whole grid. Every cell reseeds independently
/// (cell_seed(config.seed, blind, target)), so results are identical
/// whatever the execution order; `parallel` bounds worker threads.
/// A failing cell aborts the run with (blind, target) context.
RedactionMatrix run_matrix(const Table& table, const RedactionPlan& plan, int parallel = 1);

/// Per-target scores with nothing blinded (full feature set minus the
/// target); the reference point for added-value deltas. Cells reseed with
/// cell_seed(config.seed, "", target).
struct BaselineEntry {
  std::string target;
  CellScores scores;
};

std::vector<BaselineEntry> run_baseline(const Table& table, const RedactionPlan& plan,
                                        int parallel = 1);

/// delta = baseline(target).mikro - cell(blind, target).mikro; positive
/// means the blinded column was adding predictive value for the target.
/// NA cells are absent from the output.
struct AddedValueDelta {
  std::string blind;
  std::string target;
  double accuracy_delta = 0.0;
  double kappa_delta = 0.0;
};

std::vector<AddedValueDelta> added_value_deltas(const RedactionMatrix& matrix,
                                                const std::vector<BaselineEntry>& baseline);

}  // namespace blindfold
