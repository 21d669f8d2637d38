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
#include "blindfold/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "blindfold/nbayes.hpp"
#include "blindfold/rng.hpp"

namespace blindfold {

std::string_view to_string(BinScope s) { return s == BinScope::Fold ? "fold" : "global"; }

BinScope bin_scope_from_string(std::string_view s) {
  if (s == "fold") return BinScope::Fold;
  if (s == "global") return BinScope::Global;
  throw ConfigError("unknown fit scope '" + std::string(s) + "' (expected fold or global)");
}

FoldPlan make_folds_codes(std::span<const std::int32_t> strata, int k, std::uint64_t seed) {
  const std::size_t n = strata.size();
  if (k < 2) throw DataError("make_folds: need k >= 2, got " + std::to_string(k));
  if (n < static_cast<std::size_t>(k))
    throw DataError("make_folds: " + std::to_string(n) + " rows cannot fill k=" +
                    std::to_string(k) + " folds");

  // Strata in first-appearance order.
  std::int32_t max_code = 0;
  for (std::int32_t c : strata) max_code = std::max(max_code, c);
  std::vector<std::int32_t> order(max_code + 1, -1);
  std::vector<std::vector<std::int32_t>> groups;
  for (std::size_t r = 0; r < n; ++r) {
    std::int32_t c = strata[r];
    if (order[c] < 0) {
      order[c] = static_cast<std::int32_t>(groups.size());
      groups.emplace_back();
    }
    groups[order[c]].push_back(static_cast<std::int32_t>(r));
  }

  std::uint64_t mix = seed;
  Pcg32 rng(splitmix64(mix));

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(n, 0);
  std::int32_t cursor = 0;
  for (auto& group : groups) {
    deterministic_shuffle(group, rng);
    for (std::int32_t row : group) {
      plan.assignment[row] = cursor;
      cursor = (cursor + 1) % k;
    }
  }
  return plan;
}

FoldPlan make_folds(const Table& table, std::string_view target, int k, std::uint64_t seed) {
  const Column& col = table.at(target);
  if (col.kind != ColumnKind::Categorical)
    throw DataError("make_folds: target '" + std::string(target) +
                    "' is not categorical; stratify through cross_validate for numeric targets");
  return make_folds_codes(col.codes, k, seed);
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted) {
  if (truth.size() != predicted.size())
    throw DataError("confusion: " + std::to_string(truth.size()) + " truth labels vs " +
                    std::to_string(predicted.size()) + " predictions");

  ConfusionMatrix cm;
  std::unordered_map<std::string, std::size_t> index;
  auto slot = [&](const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    std::size_t i = cm.labels.size();
    cm.labels.push_back(label);
    index.emplace(label, i);
    return i;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    std::size_t t = slot(truth[i]);
    std::size_t p = slot(predicted[i]);
    pairs.emplace_back(t, p);
  }
  const std::size_t L = cm.labels.size();
  cm.counts.assign(L * L, 0);
  for (auto [t, p] : pairs) ++cm.counts[t * L + p];
  return cm;
}

namespace {

struct Marginals {
  double p_o = 0.0;
  double p_e = 0.0;
};

Marginals marginals_of(std::span<const std::int64_t> counts, std::size_t L) {
  std::int64_t total = 0, trace = 0;
  std::vector<std::int64_t> row(L, 0), col(L, 0);
  for (std::size_t t = 0; t < L; ++t) {
    for (std::size_t p = 0; p < L; ++p) {
      std::int64_t c = counts[t * L + p];
      total += c;
      row[t] += c;
      col[p] += c;
      if (t == p) trace += c;
    }
  }
  if (total == 0) throw DataError("empty confusion matrix");
  double n = static_cast<double>(total);
  Marginals m;
  m.p_o = static_cast<double>(trace) / n;
  for (std::size_t l = 0; l < L; ++l)
    m.p_e += (static_cast<double>(row[l]) / n) * (static_cast<double>(col[l]) / n);
  return m;
}

}  // namespace

double accuracy(const ConfusionMatrix& cm) {
  return 100.0 * marginals_of(cm.counts, cm.labels.size()).p_o;
}

double kappa(const ConfusionMatrix& cm) {
  Marginals m = marginals_of(cm.counts, cm.labels.size());
  if (1.0 - m.p_e < 1e-12) return 0.0;
  return (m.p_o - m.p_e) / (1.0 - m.p_e);
}

ScoreTriple score_triple(std::span<const double> fold_values) {
  if (fold_values.empty()) throw DataError("score_triple: no fold values");
  ScoreTriple t;
  t.minus = *std::min_element(fold_values.begin(), fold_values.end());
  t.plus = *std::max_element(fold_values.begin(), fold_values.end());
  double sum = 0.0;
  for (double v : fold_values) sum += v;
  t.mikro = sum / static_cast<double>(fold_values.size());
  return t;
}

CvResult cross_validate(const Table& table, std::string_view target, const EvalConfig& config) {
  const Column& target_col = table.at(target);
  const std::size_t n = table.row_count;

  // Stratification codes: the labels themselves, or global bins of a
  // numeric target (balance only; learning labels stay fold-fit).
  std::vector<std::int32_t> strat_buffer;
  std::span<const std::int32_t> strata;
  if (target_col.kind == ColumnKind::Categorical) {
    strata = target_col.codes;
  } else {
    Discretizer d =
        fit_bins(target_col, config.binning.method, config.binning.bins, {}, "stratification");
    strat_buffer.reserve(n);
    for (double v : target_col.numbers) strat_buffer.push_back(d.bin_of(v) + 1);  // NaN -> 0
    strata = strat_buffer;
  }
  FoldPlan folds = make_folds_codes(strata, config.k, config.seed);

  // Pre-fit global-scope discretizers once.
  std::vector<const Column*> numeric_cols;
  for (const auto& c : table.columns)
    if (c.kind == ColumnKind::Numeric) numeric_cols.push_back(&c);

  std::vector<Discretizer> global_discretizers;
  std::vector<Column> global_binned;
  if (config.binning.scope == BinScope::Global) {
    for (const Column* c : numeric_cols) {
      global_discretizers.push_back(
          fit_bins(*c, config.binning.method, config.binning.bins, {}, "all-rows"));
      global_binned.push_back(apply(global_discretizers.back(), *c));
    }
  }

  CvResult result;
  result.feature_count = static_cast<int>(table.columns.size()) - 1;
  if (config.binning.scope == BinScope::Global) result.discretizers = global_discretizers;

  std::vector<double> fold_accuracy, fold_kappa;
  for (int f = 0; f < config.k; ++f) {
    std::vector<std::int32_t> train_rows, test_rows;
    train_rows.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      (folds.assignment[r] == f ? test_rows : train_rows).push_back(
          static_cast<std::int32_t>(r));
    }

    // Per-fold cut points fit on training rows only.
    std::vector<Column> fold_binned;
    if (config.binning.scope == BinScope::Fold) {
      fold_binned.reserve(numeric_cols.size());
      for (const Column* c : numeric_cols) {
        Discretizer d = fit_bins(*c, config.binning.method, config.binning.bins, train_rows,
                                 "fold-" + std::to_string(f) + "-train");
        if (f == 0) result.discretizers.push_back(d);
        fold_binned.push_back(apply(d, *c));
      }
    }
    const std::vector<Column>& binned =
        config.binning.scope == BinScope::Fold ? fold_binned : global_binned;

    auto encoded_of = [&](const Column& c) {
      if (c.kind == ColumnKind::Categorical) return encode(c);
      for (std::size_t i = 0; i < numeric_cols.size(); ++i)
        if (numeric_cols[i] == &c) return encode(binned[i]);
      throw DataError("cross_validate: lost track of column '" + c.name + "'");
    };

    std::vector<EncodedColumn> features;
    for (const auto& c : table.columns)
      if (c.name != target) features.push_back(encoded_of(c));
    EncodedColumn encoded_target = encoded_of(target_col);

    NBModel model = fit_encoded(features, encoded_target, train_rows, config.alpha);
    if (f == 0) result.target_label_count = static_cast<int>(model.label_count());

    std::vector<std::int32_t> predicted = predict_encoded(model, features, test_rows);

    // Confusion over dictionary codes; the model's labels head the universe,
    // truth-only codes (bins absent from training) are appended.
    std::vector<std::int32_t> code_to_slot(encoded_target.cats->size(), -1);
    std::vector<std::int32_t> slot_codes = model.label_codes;
    for (std::size_t i = 0; i < model.label_codes.size(); ++i)
      code_to_slot[model.label_codes[i]] = static_cast<std::int32_t>(i);
    for (std::int32_t r : test_rows) {
      std::int32_t code = encoded_target.codes[r];
      if (code_to_slot[code] < 0) {
        code_to_slot[code] = static_cast<std::int32_t>(slot_codes.size());
        slot_codes.push_back(code);
      }
    }
    ConfusionMatrix cm;
    for (std::int32_t code : slot_codes) cm.labels.push_back((*encoded_target.cats)[code]);
    const std::size_t L = cm.labels.size();
    cm.counts.assign(L * L, 0);
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      std::size_t t = code_to_slot[encoded_target.codes[test_rows[i]]];
      std::size_t p = predicted[i];  // model labels occupy the leading slots
      ++cm.counts[t * L + p];
    }

    FoldScore score{accuracy(cm), kappa(cm)};
    result.per_fold.push_back(score);
    fold_accuracy.push_back(score.accuracy);
    fold_kappa.push_back(score.kappa);
  }

  result.accuracy = score_triple(fold_accuracy);
  result.kappa = score_triple(fold_kappa);
  return result;
}

}  // namespace blindfold
