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
#include "blindfold/runcfg.hpp"

#include <algorithm>
#include <fstream>

#include "blindfold/csv.hpp"
#include "blindfold/ingest.hpp"

namespace blindfold {

RunConfig RunConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    if (!j.contains("data")) throw ConfigError("run config: missing 'data'");
    c.data = base_dir / j.at("data").get<std::string>();

    if (j.contains("plan")) {
      const auto& plan = j.at("plan");
      if (plan.is_string()) {
        c.plan_kind = plan.get<std::string>();
        if (c.plan_kind != "medicare-default")
          throw ConfigError("run config: unknown plan '" + c.plan_kind + "'");
      } else if (plan.is_object()) {
        c.plan_kind = "custom";
        c.blind = plan.at("blind").get<std::vector<std::string>>();
        c.targets = plan.at("targets").get<std::vector<std::string>>();
        if (c.blind.empty() || c.targets.empty())
          throw ConfigError("run config: custom plan needs non-empty blind and targets");
      } else {
        throw ConfigError("run config: 'plan' must be a string or an object");
      }
    }

    c.eval.k = j.value("k", 10);
    c.eval.seed = j.value("seed", std::uint64_t{0});
    c.eval.alpha = j.value("alpha", 1.0);
    if (c.eval.k < 2) throw ConfigError("run config: k must be >= 2");
    if (!(c.eval.alpha > 0.0)) throw ConfigError("run config: alpha must be > 0");
    if (j.contains("binning")) {
      const auto& b = j.at("binning");
      c.eval.binning.method = bin_method_from_string(b.value("method", "equal-frequency"));
      c.eval.binning.bins = b.value("bins", 10);
      c.eval.binning.scope = bin_scope_from_string(b.value("fit_scope", "fold"));
      if (c.eval.binning.bins < 2) throw ConfigError("run config: binning.bins must be >= 2");
    }
    c.baseline = j.value("baseline", true);
    c.parallel = j.value("parallel", 1);
    if (c.parallel < 1) throw ConfigError("run config: parallel must be >= 1");
    if (j.contains("out_dir")) c.out_dir = base_dir / j.at("out_dir").get<std::string>();
    if (j.contains("categorical_columns"))
      c.categorical_columns = j.at("categorical_columns").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read run config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("run config '" + path.string() + "': " + e.what());
  }
  return from_json(j, path.parent_path());
}

nlohmann::ordered_json RunConfig::echo(const RedactionPlan& plan) const {
  nlohmann::ordered_json j;
  j["data"] = data.string();
  j["plan"] = nlohmann::ordered_json{{"kind", plan_kind},
                                     {"blind", plan.blind_set},
                                     {"targets", plan.target_set}};
  j["k"] = eval.k;
  j["seed"] = eval.seed;
  j["alpha"] = eval.alpha;
  j["binning"] =
      nlohmann::ordered_json{{"method", std::string(to_string(eval.binning.method))},
                             {"bins", eval.binning.bins},
                             {"fit_scope", std::string(to_string(eval.binning.scope))}};
  j["baseline"] = baseline;
  j["categorical_columns"] = categorical_columns;
  j["rng"] = "pcg32";
  j["cell_seed_rule"] = "fnv1a64(le64(seed) || blind || 0x1f || target); baseline blind=\"\"";
  return j;
}

RunOutputs run_experiment(const RunConfig& config) {
  if (!std::filesystem::exists(config.data))
    throw ConfigError("data file not found: '" + config.data.string() + "'");
  std::filesystem::create_directories(config.out_dir);

  CsvFormat fmt;
  fmt.categorical_overrides = config.categorical_columns;
  if (config.plan_kind == "medicare-default") {
    for (const auto& name : schema::canonical_columns()) {
      if (schema::is_categorical(name)) fmt.categorical_overrides.push_back(name);
    }
  }
  Table table = load_table(config.data, fmt);

  RedactionPlan plan;
  if (config.plan_kind == "medicare-default") {
    plan = plan_default_medicare(table);
  } else {
    plan.blind_set = config.blind;
    plan.target_set = config.targets;
  }
  plan.config = config.eval;

  RedactionMatrix matrix = run_matrix(table, plan, config.parallel);
  std::vector<BaselineEntry> baseline;
  std::vector<AddedValueDelta> deltas;
  if (config.baseline) {
    baseline = run_baseline(table, plan, config.parallel);
    deltas = added_value_deltas(matrix, baseline);
  }

  RunReport report = build_run_report(table, config.echo(plan), std::move(matrix),
                                      std::move(baseline), std::move(deltas));

  RunOutputs out;
  for (Metric metric : {Metric::Accuracy, Metric::Kappa}) {
    for (Statistic stat : {Statistic::Minus, Statistic::Plus, Statistic::Mikro}) {
      auto path = config.out_dir / (std::string(to_string(metric)) + "_" +
                                    std::string(to_string(stat)) + ".csv");
      emit_matrix_csv(report.matrix, metric, stat, path);
      out.matrix_csvs.push_back(path);
    }
  }
  out.report_json = config.out_dir / "run_report.json";
  emit_run_json(report, out.report_json);
  return out;
}

}  // namespace blindfold
