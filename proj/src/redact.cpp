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
#include "blindfold/redact.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "blindfold/ingest.hpp"
#include "blindfold/rng.hpp"

namespace blindfold {

RedactionPlan plan_default_medicare(const Table& table) {
  for (const auto& name : schema::canonical_columns()) {
    if (!table.has(name))
      throw DataError("medicare-default plan: table lacks schema column '" + name + "'");
  }
  RedactionPlan plan;
  plan.blind_set = {schema::kChargePD,  schema::kTotalCharge,  schema::kCity,
                    schema::kDischarges, schema::kDRG,          schema::kInOrOut,
                    schema::kLossPD,    schema::kTotalLoss,    schema::kPaymentPD,
                    schema::kTotalPayment, schema::kProvider,  schema::kState,
                    schema::kZip};
  plan.target_set = {schema::kChargePD,  schema::kTotalCharge, schema::kDischarges,
                     schema::kDRG,       schema::kLossPD,      schema::kTotalLoss,
                     schema::kPaymentPD, schema::kTotalPayment, schema::kState,
                     schema::kZip};
  return plan;
}

std::size_t RedactionMatrix::computed_cells() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.na ? 0 : 1;
  return n;
}

namespace {

CellScores from_cv(CvResult cv) {
  CellScores s;
  s.accuracy = cv.accuracy;
  s.kappa = cv.kappa;
  s.per_fold = std::move(cv.per_fold);
  s.target_label_count = cv.target_label_count;
  s.feature_count = cv.feature_count;
  s.discretizers = std::move(cv.discretizers);
  return s;
}

/// Run fn(i) for i in [0, n) on up to `parallel` threads. Results land by
/// index, so the output cannot depend on scheduling.
void parallel_for(std::size_t n, int parallel, const std::function<void(std::size_t)>& fn) {
  int workers = std::max(1, parallel);
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      if (failed.load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min<int>(workers, static_cast<int>(n)); ++w)
    threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

CellScores run_cell(const Table& table, std::string_view blind, std::string_view target,
                    const EvalConfig& config) {
  if (blind == target) throw DataError("run_cell: blind and target are both '" +
                                       std::string(blind) + "'");
  table.at(blind);  // both must exist
  table.at(target);
  Table reduced = table.without(blind);
  return from_cv(cross_validate(reduced, target, config));
}

RedactionMatrix run_matrix(const Table& table, const RedactionPlan& plan, int parallel) {
  for (const auto& name : plan.blind_set) table.at(name);
  for (const auto& name : plan.target_set) table.at(name);

  RedactionMatrix matrix;
  matrix.blind_labels = plan.blind_set;
  matrix.target_labels = plan.target_set;
  matrix.cells.resize(plan.blind_set.size() * plan.target_set.size());

  struct Job {
    std::size_t row, col;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < plan.blind_set.size(); ++i) {
    for (std::size_t j = 0; j < plan.target_set.size(); ++j) {
      if (plan.blind_set[i] == plan.target_set[j]) {
        matrix.cell(i, j).na = true;
      } else {
        jobs.push_back({i, j});
      }
    }
  }

  parallel_for(jobs.size(), parallel, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const std::string& blind = plan.blind_set[job.row];
    const std::string& target = plan.target_set[job.col];
    EvalConfig cfg = plan.config;
    cfg.seed = cell_seed(plan.config.seed, blind, target);
    try {
      matrix.cell(job.row, job.col) = run_cell(table, blind, target, cfg);
    } catch (const std::exception& e) {
      throw DataError("cell (blind=" + blind + ", target=" + target + "): " + e.what());
    }
  });
  return matrix;
}

std::vector<BaselineEntry> run_baseline(const Table& table, const RedactionPlan& plan,
                                        int parallel) {
  std::vector<BaselineEntry> baseline(plan.target_set.size());
  parallel_for(baseline.size(), parallel, [&](std::size_t j) {
    const std::string& target = plan.target_set[j];
    EvalConfig cfg = plan.config;
    cfg.seed = cell_seed(plan.config.seed, "", target);
    try {
      baseline[j] = BaselineEntry{target, from_cv(cross_validate(table, target, cfg))};
    } catch (const std::exception& e) {
      throw DataError("baseline (target=" + target + "): " + e.what());
    }
  });
  return baseline;
}

std::vector<AddedValueDelta> added_value_deltas(const RedactionMatrix& matrix,
                                                const std::vector<BaselineEntry>& baseline) {
  std::vector<const BaselineEntry*> by_col(matrix.target_labels.size(), nullptr);
  for (std::size_t j = 0; j < matrix.target_labels.size(); ++j) {
    for (const auto& b : baseline)
      if (b.target == matrix.target_labels[j]) by_col[j] = &b;
    if (!by_col[j])
      throw DataError("added_value_deltas: no baseline for target '" +
                      matrix.target_labels[j] + "'");
  }
  std::vector<AddedValueDelta> deltas;
  for (std::size_t i = 0; i < matrix.blind_labels.size(); ++i) {
    for (std::size_t j = 0; j < matrix.target_labels.size(); ++j) {
      const CellScores& cell = matrix.cell(i, j);
      if (cell.na) continue;
      deltas.push_back({matrix.blind_labels[i], matrix.target_labels[j],
                        by_col[j]->scores.accuracy.mikro - cell.accuracy.mikro,
                        by_col[j]->scores.kappa.mikro - cell.kappa.mikro});
    }
  }
  return deltas;
}

}  // namespace blindfold
