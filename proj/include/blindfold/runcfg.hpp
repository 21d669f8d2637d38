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

#include "blindfold/evaluate.hpp"
#include "blindfold/report.hpp"

namespace blindfold {

/// A full experiment: dataset, plan, evaluation knobs, outputs. The echo()
/// of this config goes into the run report verbatim, which is what makes a
/// run re-runnable from its report alone.
struct RunConfig {
  std::filesystem::path data;
  std::string plan_kind = "medicare-default";  // or "custom"
  std::vector<std::string> blind;              // custom plan
  std::vector<std::string> targets;
  EvalConfig eval;
  bool baseline = true;
  int parallel = 1;
  std::filesystem::path out_dir = "out";
  std::vector<std::string> categorical_columns;  // extra load-time overrides

  /// Relative paths resolve against `base_dir` (the config file's parent).
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  nlohmann::ordered_json echo(const RedactionPlan& plan) const;
};

struct RunOutputs {
  std::vector<std::filesystem::path> matrix_csvs;  // 6 files
  std::filesystem::path report_json;
};

/// Execute the whole run: load the data, build the plan, compute the
/// matrix (and baseline + deltas unless disabled), write the six matrix
/// CSVs and the run report into out_dir.
RunOutputs run_experiment(const RunConfig& config);

}  // namespace blindfold
