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
#include <unordered_map>
#include <vector>

#include "blindfold/table.hpp"

namespace blindfold {

/// Read-only view of a categorical column: dictionary codes plus the
/// dictionary itself. Lets cross-validation feed per-fold discretized
/// columns and raw table columns through one fitting path.
struct EncodedColumn {
  std::string name;
  const std::int32_t* codes = nullptr;
  std::size_t size = 0;
  const std::vector<std::string>* cats = nullptr;
};

EncodedColumn encode(const Column& column);

/// Categorical Naive Bayes with additive smoothing, log-space throughout.
///
///   prior(l)        = (count(l) + alpha) / (n + alpha * L)
///   cond(v | l, f)  = (count(v, l) + alpha) / (count(l) + alpha * V_f)
///   unseen(l, f)    = alpha / (count(l) + alpha * V_f)
///
/// where L is the number of labels seen in training and V_f the size of
/// feature f's training vocabulary.
struct NBModel {
  struct Feature {
    std::string name;
    std::vector<std::string> vocab;  // training-appearance order
    std::unordered_map<std::string, std::int32_t> token_to_dense;
    std::vector<std::int32_t> code_to_dense;  // aligned to the fit dictionary; -1 = unseen
    std::vector<double> log_cond;             // [dense_value * L + label]
    std::vector<double> log_unseen;           // [label]
  };

  std::string target_name;
  std::vector<std::string> labels;        // training-appearance order (tie-break order)
  std::vector<std::int32_t> label_codes;  // label -> code in the fit dictionary
  std::vector<double> log_prior;
  double alpha = 1.0;
  std::vector<Feature> features;

  std::size_t label_count() const { return labels.size(); }
};

/// Fit on all rows of a table; every column other than `target` is a
/// feature and must be categorical (discretize numerics first).
NBModel fit(const Table& train, std::string_view target, double alpha);

/// Fit on a row subset of encoded columns (the cross-validation path).
NBModel fit_encoded(const std::vector<EncodedColumn>& features, const EncodedColumn& target,
                    std::span<const std::int32_t> rows, double alpha);

/// Per-label posterior for one row given as a feature->token map.
/// Features absent from the map contribute no evidence; tokens unseen in
/// training contribute the smoothing-only mass. Overflow-safe (max
/// log-score subtracted before exponentiation); sums to 1.
std::vector<double> posterior(const NBModel& model,
                              const std::unordered_map<std::string, std::string>& row);

/// Argmax of posterior; exact ties go to the earliest label in
/// training-appearance order.
const std::string& predict(const NBModel& model,
                           const std::unordered_map<std::string, std::string>& row);

/// Row-wise predict over a table whose columns cover the model's features.
std::vector<std::string> batch_predict(const NBModel& model, const Table& table);

/// Fast path: predicted dense label indices for a row subset of encoded
/// columns. The columns must use the same dictionaries the model was fit
/// against, in the same order.
std::vector<std::int32_t> predict_encoded(const NBModel& model,
                                          const std::vector<EncodedColumn>& features,
                                          std::span<const std::int32_t> rows);

}  // namespace blindfold
