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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "blindfold/csv.hpp"
#include "blindfold/ingest.hpp"
#include "blindfold/report.hpp"
#include "blindfold/runcfg.hpp"
#include "blindfold/synth.hpp"

namespace fs = std::filesystem;
using namespace blindfold;

namespace {

// Exit codes: 0 ok, 2 configuration error, 3 data error, 4 internal error.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kDataError = 3;
constexpr int kInternalError = 4;

std::optional<std::string> env_out_dir() {
  const char* v = std::getenv("BLINDFOLD_OUT_DIR");
  if (v && *v) return std::string(v);
  return std::nullopt;
}

void cmd_ingest(const fs::path& inpatient_path, const fs::path& outpatient_path,
                const fs::path& mapping_path, const fs::path& out_path,
                fs::path drop_report_path) {
  for (const fs::path& p : {inpatient_path, outpatient_path, mapping_path}) {
    if (!fs::exists(p)) throw ConfigError("input file not found: '" + p.string() + "'");
  }
  SchemaMapping mapping = SchemaMapping::load(mapping_path);

  CsvFormat in_fmt;
  in_fmt.categorical_overrides = mapping.categorical_overrides(true);
  CsvFormat out_fmt;
  out_fmt.categorical_overrides = mapping.categorical_overrides(false);

  Table inpatient = load_table(inpatient_path, in_fmt);
  Table outpatient = load_table(outpatient_path, out_fmt);
  Table joined = harmonize_join(inpatient, outpatient, mapping);
  DeriveResult derived = derive_columns(joined);

  write_table(derived.table, out_path);
  if (drop_report_path.empty()) {
    drop_report_path = out_path;
    drop_report_path += ".drops.txt";
  }
  std::ofstream drops(drop_report_path, std::ios::binary);
  if (!drops) throw DataError("cannot write '" + drop_report_path.string() + "'");
  drops << derived.drop_report();

  ValidationReport validation = validate_schema(derived.table);
  std::cout << "joined " << inpatient.row_count << " inpatient + " << outpatient.row_count
            << " outpatient rows; retained " << derived.table.row_count << " (dropped "
            << derived.dropped() << ")\n"
            << validation.to_string() << "wrote " << out_path.string() << "\n";
  if (!validation.all_pass) throw DataError("derived table failed schema validation");
}

void cmd_run(const fs::path& config_path, std::optional<int> parallel_flag,
             std::optional<std::string> out_dir_flag) {
  if (!fs::exists(config_path))
    throw ConfigError("config file not found: '" + config_path.string() + "'");
  RunConfig config = RunConfig::load(config_path);
  if (auto env = env_out_dir()) config.out_dir = *env;  // env overrides config,
  if (out_dir_flag) config.out_dir = *out_dir_flag;     // flags override both
  if (parallel_flag) config.parallel = *parallel_flag;

  RunOutputs out = run_experiment(config);
  std::cout << "wrote " << out.report_json.string() << " and " << out.matrix_csvs.size()
            << " matrix CSVs in " << config.out_dir.string() << "\n";
}

void cmd_report(const fs::path& run_json_path, std::optional<std::string> out_dir_flag,
                const fs::path& table_path) {
  if (!fs::exists(run_json_path))
    throw ConfigError("run report not found: '" + run_json_path.string() + "'");
  fs::path out_dir = run_json_path.parent_path();
  if (auto env = env_out_dir()) out_dir = *env;
  if (out_dir_flag) out_dir = *out_dir_flag;

  RunReport report = load_run_json(run_json_path);
  auto written = emit_charts(report.matrix, out_dir);
  if (!table_path.empty()) {
    if (!fs::exists(table_path))
      throw ConfigError("table file not found: '" + table_path.string() + "'");
    CsvFormat fmt;
    for (const auto& name : schema::canonical_columns()) {
      if (schema::is_categorical(name)) fmt.categorical_overrides.push_back(name);
    }
    Table table = load_table(table_path, fmt);
    fs::path summary = out_dir / "graph1_totals_by_transaction.svg";
    emit_summary_chart(table, summary);
    written.push_back(summary);
  }
  std::cout << "wrote " << written.size() << " charts in " << out_dir.string() << "\n";
}

void cmd_synth(const fs::path& spec_path, const fs::path& out_path) {
  if (!fs::exists(spec_path))
    throw ConfigError("synth spec not found: '" + spec_path.string() + "'");
  SynthSpec spec = SynthSpec::load(spec_path);
  Table table = generate(spec);
  write_table(table, out_path);
  std::cout << "wrote " << table.row_count << " rows x " << table.columns.size()
            << " columns to " << out_path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blindfold: column-redaction attribution for rectangular data via "
               "cross-validated Naive Bayes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand(
      "ingest", "Join inpatient/outpatient charge files into the derived analysis table");
  fs::path in_path, out_path, mapping_path, derived_path, drop_path;
  ingest->add_option("--inpatient", in_path, "Inpatient charge CSV")->required();
  ingest->add_option("--outpatient", out_path, "Outpatient charge CSV")->required();
  ingest->add_option("--mapping", mapping_path, "Column mapping JSON")->required();
  ingest->add_option("--out", derived_path, "Derived table CSV to write")->required();
  ingest->add_option("--drop-report", drop_path, "Drop report path (default <out>.drops.txt)");

  auto* run = app.add_subcommand("run", "Run the blind-redaction score matrix from a config");
  fs::path config_path;
  int parallel = 0;
  std::string out_dir;
  run->add_option("--config", config_path, "Run configuration JSON")->required();
  auto* parallel_opt =
      run->add_option("--parallel", parallel, "Max concurrent redaction cells (>= 1)");
  auto* out_dir_opt = run->add_option("--out-dir", out_dir, "Output directory override");

  auto* report = app.add_subcommand("report", "Emit charts from a run report");
  fs::path run_json, report_table;
  std::string report_out_dir;
  report->add_option("--run", run_json, "run_report.json from a finished run")->required();
  auto* report_out_opt =
      report->add_option("--out-dir", report_out_dir, "Chart output directory");
  report->add_option("--table", report_table,
                     "Derived table CSV; adds the per-transaction totals chart");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic table from a spec");
  fs::path spec_path, synth_out;
  synth->add_option("--spec", spec_path, "Synth spec JSON")->required();
  synth->add_option("--out", synth_out, "Table CSV to write")->required();

  try {
    app.parse(argc, argv);
    if (ingest->parsed()) {
      cmd_ingest(in_path, out_path, mapping_path, derived_path, drop_path);
    } else if (run->parsed()) {
      cmd_run(config_path,
              parallel_opt->count() ? std::optional<int>(parallel) : std::nullopt,
              out_dir_opt->count() ? std::optional<std::string>(out_dir) : std::nullopt);
    } else if (report->parsed()) {
      cmd_report(run_json,
                 report_out_opt->count() ? std::optional<std::string>(report_out_dir)
                                         : std::nullopt,
                 report_table);
    } else if (synth->parsed()) {
      cmd_synth(spec_path, synth_out);
    }
    return kOk;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
