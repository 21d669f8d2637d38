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
#include "blindfold/nbayes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blindfold {

EncodedColumn encode(const Column& column) {
  if (column.kind != ColumnKind::Categorical)
    throw DataError("column '" + column.name + "' is not categorical; discretize it first");
  return EncodedColumn{column.name, column.codes.data(), column.codes.size(), &column.cats};
}

NBModel fit_encoded(const std::vector<EncodedColumn>& features, const EncodedColumn& target,
                    std::span<const std::int32_t> rows, double alpha) {
  if (rows.empty()) throw DataError("fit: no training rows");
  if (!(alpha > 0.0)) throw DataError("fit: alpha must be > 0");

  NBModel model;
  model.target_name = target.name;
  model.alpha = alpha;

  const std::size_t n = rows.size();

  // Label universe in training-appearance order.
  std::vector<std::int32_t> code_to_label(target.cats->size(), -1);
  std::vector<std::int64_t> label_counts;
  for (std::int32_t r : rows) {
    std::int32_t code = target.codes[r];
    if (code_to_label[code] < 0) {
      code_to_label[code] = static_cast<std::int32_t>(model.labels.size());
      model.labels.push_back((*target.cats)[code]);
      model.label_codes.push_back(code);
      label_counts.push_back(0);
    }
    ++label_counts[code_to_label[code]];
  }
  const std::size_t L = model.labels.size();

  // log(c + alpha) for every integer count that can occur.
  std::vector<double> log_count(n + 1);
  for (std::size_t c = 0; c <= n; ++c)
    log_count[c] = std::log(static_cast<double>(c) + alpha);

  const double log_n_total = std::log(static_cast<double>(n) + alpha * static_cast<double>(L));
  model.log_prior.resize(L);
  for (std::size_t l = 0; l < L; ++l)
    model.log_prior[l] = log_count[label_counts[l]] - log_n_total;

  model.features.reserve(features.size());
  for (const auto& fc : features) {
    NBModel::Feature f;
    f.name = fc.name;
    f.code_to_dense.assign(fc.cats->size(), -1);

    // Vocabulary in training-appearance order, then one counting pass.
    for (std::int32_t r : rows) {
      std::int32_t code = fc.codes[r];
      if (f.code_to_dense[code] < 0) {
        f.code_to_dense[code] = static_cast<std::int32_t>(f.vocab.size());
        f.vocab.push_back((*fc.cats)[code]);
      }
    }
    const std::size_t V = f.vocab.size();
    for (std::size_t d = 0; d < V; ++d) f.token_to_dense.emplace(f.vocab[d], d);

    std::vector<std::int32_t> counts(V * L, 0);
    for (std::int32_t r : rows) {
      std::int32_t v = f.code_to_dense[fc.codes[r]];
      std::int32_t l = code_to_label[target.codes[r]];
      ++counts[static_cast<std::size_t>(v) * L + l];
    }

    std::vector<double> log_denom(L);
    for (std::size_t l = 0; l < L; ++l)
      log_denom[l] =
          std::log(static_cast<double>(label_counts[l]) + alpha * static_cast<double>(V));

    f.log_cond.resize(V * L);
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t l = 0; l < L; ++l)
        f.log_cond[v * L + l] = log_count[counts[v * L + l]] - log_denom[l];

    f.log_unseen.resize(L);
    for (std::size_t l = 0; l < L; ++l) f.log_unseen[l] = log_count[0] - log_denom[l];

    model.features.push_back(std::move(f));
  }
  return model;
}

NBModel fit(const Table& train, std::string_view target, double alpha) {
  const Column& tcol = train.at(target);
  if (tcol.kind != ColumnKind::Categorical)
    throw DataError("fit: target '" + std::string(target) +
                    "' is not categorical; discretize it first");
  if (train.row_count == 0) throw DataError("fit: empty training table");

  std::vector<EncodedColumn> features;
  for (const auto& c : train.columns) {
    if (c.name == target) continue;
    features.push_back(encode(c));  // throws for numeric features
  }
  std::vector<std::int32_t> rows(train.row_count);
  std::iota(rows.begin(), rows.end(), 0);
  return fit_encoded(features, encode(tcol), rows, alpha);
}

namespace {

std::vector<double> log_scores(const NBModel& model,
                               const std::unordered_map<std::string, std::string>& row) {
  std::vector<double> scores(model.log_prior);
  const std::size_t L = model.label_count();
  for (const auto& f : model.features) {
    auto it = row.find(f.name);
    if (it == row.end() || it->second.empty()) continue;  // no evidence from this feature
    auto dense = f.token_to_dense.find(it->second);
    if (dense != f.token_to_dense.end()) {
      const double* base = &f.log_cond[static_cast<std::size_t>(dense->second) * L];
      for (std::size_t l = 0; l < L; ++l) scores[l] += base[l];
    } else {
      for (std::size_t l = 0; l < L; ++l) scores[l] += f.log_unseen[l];
    }
  }
  return scores;
}

std::size_t argmax_first(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < scores.size(); ++l)
    if (scores[l] > scores[best]) best = l;
  return best;
}

}  // namespace

std::vector<double> posterior(const NBModel& model,
                              const std::unordered_map<std::string, std::string>& row) {
  std::vector<double> scores = log_scores(model, row);
  double m = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - m);
    sum += s;
  }
  for (double& s : scores) s /= sum;
  return scores;
}

const std::string& predict(const NBModel& model,
                           const std::unordered_map<std::string, std::string>& row) {
  return model.labels[argmax_first(log_scores(model, row))];
}

std::vector<std::string> batch_predict(const NBModel& model, const Table& table) {
  const std::size_t L = model.label_count();
  // Translate each feature's dictionary in this table into the model's
  // dense vocabulary once, then score row-wise.
  struct Bound {
    const Column* col;
    std::vector<std::int32_t> code_to_dense;
    const NBModel::Feature* feature;
  };
  std::vector<Bound> bound;
  bound.reserve(model.features.size());
  for (const auto& f : model.features) {
    const Column& c = table.at(f.name);
    if (c.kind != ColumnKind::Categorical)
      throw DataError("batch_predict: column '" + c.name + "' is not categorical");
    Bound b{&c, std::vector<std::int32_t>(c.cats.size(), -1), &f};
    for (std::size_t code = 0; code < c.cats.size(); ++code) {
      auto it = f.token_to_dense.find(c.cats[code]);
      if (it != f.token_to_dense.end()) b.code_to_dense[code] = it->second;
    }
    bound.push_back(std::move(b));
  }

  std::vector<std::string> out;
  out.reserve(table.row_count);
  std::vector<double> scores(L);
  for (std::size_t r = 0; r < table.row_count; ++r) {
    scores = model.log_prior;
    for (const auto& b : bound) {
      std::int32_t d = b.code_to_dense[b.col->codes[r]];
      if (d >= 0) {
        const double* base = &b.feature->log_cond[static_cast<std::size_t>(d) * L];
        for (std::size_t l = 0; l < L; ++l) scores[l] += base[l];
      } else {
        for (std::size_t l = 0; l < L; ++l) scores[l] += b.feature->log_unseen[l];
      }
    }
    out.push_back(model.labels[argmax_first(scores)]);
  }
  return out;
}

std::vector<std::int32_t> predict_encoded(const NBModel& model,
                                          const std::vector<EncodedColumn>& features,
                                          std::span<const std::int32_t> rows) {
  const std::size_t L = model.label_count();
  const std::size_t F = model.features.size();
  if (features.size() != F) throw DataError("predict_encoded: feature column mismatch");
  for (std::size_t i = 0; i < F; ++i)
    if (features[i].name != model.features[i].name)
      throw DataError("predict_encoded: feature order mismatch at '" + features[i].name + "'");

  std::vector<std::int32_t> out;
  out.reserve(rows.size());
  std::vector<double> scores(L);
  for (std::int32_t r : rows) {
    scores = model.log_prior;
    for (std::size_t i = 0; i < F; ++i) {
      const auto& f = model.features[i];
      std::int32_t code = features[i].codes[r];
      std::int32_t d = code < static_cast<std::int32_t>(f.code_to_dense.size())
                           ? f.code_to_dense[code]
                           : -1;
      if (d >= 0) {
        const double* base = &f.log_cond[static_cast<std::size_t>(d) * L];
        for (std::size_t l = 0; l < L; ++l) scores[l] += base[l];
      } else {
        for (std::size_t l = 0; l < L; ++l) scores[l] += f.log_unseen[l];
      }
    }
    out.push_back(static_cast<std::int32_t>(argmax_first(scores)));
  }
  return out;
}

}  // namespace blindfold
