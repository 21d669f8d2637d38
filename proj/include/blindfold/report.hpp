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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "blindfold/redact.hpp"
#include "blindfold/table.hpp"

namespace blindfold {

enum class Metric { Accuracy, Kappa };
enum class Statistic { Minus, Plus, Mikro };

std::string_view to_string(Metric m);
std::string_view to_string(Statistic s);

/// Everything needed to re-run the experiment identically plus its results:
/// config echo, dataset fingerprint, per-cell triples with per-fold lists,
/// optional baseline and added-value deltas, summary aggregates.
struct RunReport {
  std::string run_id;     // deterministic: hash of config echo + dataset hash
  std::string timestamp;  // ISO 8601 UTC; the only non-reproducible field
  nlohmann::ordered_json config_echo;
  std::size_t dataset_rows = 0;
  std::vector<std::string> dataset_columns;
  std::string dataset_hash;  // 0x-prefixed fnv1a64 of the table content
  RedactionMatrix matrix;
  std::vector<BaselineEntry> baseline;
  std::vector<AddedValueDelta> deltas;
  double mean_accuracy_mikro = 0.0;  // over non-NA cells
  double mean_kappa_mikro = 0.0;
};

RunReport build_run_report(const Table& dataset, const nlohmann::ordered_json& config_echo,
                           RedactionMatrix matrix, std::vector<BaselineEntry> baseline,
                           std::vector<AddedValueDelta> deltas);

/// One statistic of one metric as CSV: header row carries the target
/// names after the corner labels, each data row reads BLIND,<name>,cells.
/// Diagonal cells are exactly "N/A". Accuracy uses 2 decimals, kappa 3.
std::string matrix_csv(const RedactionMatrix& matrix, Metric metric, Statistic statistic);

void emit_matrix_csv(const RedactionMatrix& matrix, Metric metric, Statistic statistic,
                     const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunReport& report);

/// Rebuild a report from JSON; rejects reports whose cells lack the
/// per-fold lists (such a report cannot certify its own triples).
RunReport run_report_from_json(const nlohmann::json& j);

void emit_run_json(const RunReport& report, const std::filesystem::path& path);
RunReport load_run_json(const std::filesystem::path& path);

/// The four grouped-bar charts: accuracy and kappa, grouped by predicted
/// column and by blinded column. Each (blind, target) cell is one bar
/// group of three bars (-, +, MIKRO). Returns the files written.
std::vector<std::filesystem::path> emit_charts(const RedactionMatrix& matrix,
                                               const std::filesystem::path& out_dir);

/// Overview chart of a derived charge table: facility total charge,
/// payment, loss and discharges per transaction, inpatient block first.
void emit_summary_chart(const Table& table, const std::filesystem::path& path);

}  // namespace blindfold
