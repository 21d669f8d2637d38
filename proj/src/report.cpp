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
#include "blindfold/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "blindfold/ingest.hpp"
#include "blindfold/rng.hpp"

namespace blindfold {

std::string_view to_string(Metric m) { return m == Metric::Accuracy ? "accuracy" : "kappa"; }

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::Minus: return "minus";
    case Statistic::Plus: return "plus";
    default: return "mikro";
  }
}

namespace {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  for (int i = 60; i >= 0; i -= 4) s.push_back(digits[(v >> i) & 0xf]);
  return s;
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

double pick(const ScoreTriple& t, Statistic s) {
  switch (s) {
    case Statistic::Minus: return t.minus;
    case Statistic::Plus: return t.plus;
    default: return t.mikro;
  }
}

std::string statistic_label(Statistic s) {
  switch (s) {
    case Statistic::Minus: return "-";
    case Statistic::Plus: return "+";
    default: return "MIKRO";
  }
}

std::string metric_label(Metric m) { return m == Metric::Accuracy ? "Accuracy" : "Kappa"; }

nlohmann::ordered_json triple_json(const ScoreTriple& t) {
  return nlohmann::ordered_json{{"minus", t.minus}, {"plus", t.plus}, {"mikro", t.mikro}};
}

ScoreTriple triple_from(const nlohmann::json& j) {
  return ScoreTriple{j.at("minus").get<double>(), j.at("plus").get<double>(),
                     j.at("mikro").get<double>()};
}

nlohmann::ordered_json scores_json(const CellScores& s) {
  nlohmann::ordered_json j;
  j["accuracy"] = triple_json(s.accuracy);
  j["kappa"] = triple_json(s.kappa);
  nlohmann::ordered_json folds;
  folds["accuracy"] = nlohmann::ordered_json::array();
  folds["kappa"] = nlohmann::ordered_json::array();
  for (const auto& f : s.per_fold) {
    folds["accuracy"].push_back(f.accuracy);
    folds["kappa"].push_back(f.kappa);
  }
  j["per_fold"] = std::move(folds);
  j["model"] = nlohmann::ordered_json{{"target_labels", s.target_label_count},
                                      {"features", s.feature_count}};
  nlohmann::ordered_json discs = nlohmann::ordered_json::array();
  for (const auto& d : s.discretizers) {
    discs.push_back(nlohmann::ordered_json{{"column", d.column_name},
                                           {"method", std::string(to_string(d.method))},
                                           {"requested_bins", d.requested_bins},
                                           {"edges", d.edges},
                                           {"fitted_on", d.fitted_on}});
  }
  j["discretizers"] = std::move(discs);
  return j;
}

CellScores scores_from(const nlohmann::json& j) {
  CellScores s;
  s.accuracy = triple_from(j.at("accuracy"));
  s.kappa = triple_from(j.at("kappa"));
  if (!j.contains("per_fold") || !j.at("per_fold").contains("accuracy") ||
      !j.at("per_fold").contains("kappa") || j.at("per_fold").at("accuracy").empty()) {
    throw DataError("run report: cell lacks per-fold score lists");
  }
  const auto& fa = j.at("per_fold").at("accuracy");
  const auto& fk = j.at("per_fold").at("kappa");
  if (fa.size() != fk.size()) throw DataError("run report: per-fold lists disagree in length");
  for (std::size_t i = 0; i < fa.size(); ++i)
    s.per_fold.push_back({fa[i].get<double>(), fk[i].get<double>()});
  if (j.contains("model")) {
    s.target_label_count = j.at("model").value("target_labels", 0);
    s.feature_count = j.at("model").value("features", 0);
  }
  if (j.contains("discretizers")) {
    for (const auto& jd : j.at("discretizers")) {
      Discretizer d;
      d.column_name = jd.at("column").get<std::string>();
      d.method = bin_method_from_string(jd.at("method").get<std::string>());
      d.requested_bins = jd.at("requested_bins").get<int>();
      d.edges = jd.at("edges").get<std::vector<double>>();
      d.fitted_on = jd.value("fitted_on", "");
      s.discretizers.push_back(std::move(d));
    }
  }
  return s;
}

}  // namespace

RunReport build_run_report(const Table& dataset, const nlohmann::ordered_json& config_echo,
                           RedactionMatrix matrix, std::vector<BaselineEntry> baseline,
                           std::vector<AddedValueDelta> deltas) {
  RunReport r;
  r.config_echo = config_echo;
  r.dataset_rows = dataset.row_count;
  r.dataset_columns = dataset.column_names();
  r.dataset_hash = hex64(dataset.content_hash());
  r.matrix = std::move(matrix);
  r.baseline = std::move(baseline);
  r.deltas = std::move(deltas);
  r.timestamp = iso8601_utc_now();
  r.run_id = hex64(fnv1a64(r.dataset_hash, fnv1a64(config_echo.dump())));

  double acc_sum = 0.0, kap_sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : r.matrix.cells) {
    if (c.na) continue;
    acc_sum += c.accuracy.mikro;
    kap_sum += c.kappa.mikro;
    ++n;
  }
  if (n > 0) {
    r.mean_accuracy_mikro = acc_sum / static_cast<double>(n);
    r.mean_kappa_mikro = kap_sum / static_cast<double>(n);
  }
  return r;
}

std::string matrix_csv(const RedactionMatrix& matrix, Metric metric, Statistic statistic) {
  std::string out;
  out += ',' + metric_label(metric) + ' ' + statistic_label(statistic);
  for (const auto& t : matrix.target_labels) out += ',' + t;
  out += '\n';
  const int precision = metric == Metric::Accuracy ? 2 : 3;
  for (std::size_t i = 0; i < matrix.blind_labels.size(); ++i) {
    out += "BLIND," + matrix.blind_labels[i];
    for (std::size_t j = 0; j < matrix.target_labels.size(); ++j) {
      const CellScores& c = matrix.cell(i, j);
      out += ',';
      if (c.na) {
        out += "N/A";
      } else {
        double v = pick(metric == Metric::Accuracy ? c.accuracy : c.kappa, statistic);
        out += format_fixed(v, precision);
      }
    }
    out += '\n';
  }
  return out;
}

void emit_matrix_csv(const RedactionMatrix& matrix, Metric metric, Statistic statistic,
                     const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << matrix_csv(matrix, metric, statistic);
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["run_id"] = report.run_id;
  j["timestamp"] = report.timestamp;
  j["tool"] = nlohmann::ordered_json{{"name", "blindfold"}, {"version", std::string(kVersion)}};
  j["config"] = report.config_echo;
  j["dataset"] = nlohmann::ordered_json{{"rows", report.dataset_rows},
                                        {"columns", report.dataset_columns},
                                        {"content_hash", report.dataset_hash}};
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.matrix.blind_labels.size(); ++i) {
    for (std::size_t j2 = 0; j2 < report.matrix.target_labels.size(); ++j2) {
      const CellScores& c = report.matrix.cell(i, j2);
      nlohmann::ordered_json jc;
      jc["blind"] = report.matrix.blind_labels[i];
      jc["target"] = report.matrix.target_labels[j2];
      jc["na"] = c.na;
      if (!c.na) {
        nlohmann::ordered_json body = scores_json(c);
        for (auto& [k, v] : body.items()) jc[k] = v;
      }
      cells.push_back(std::move(jc));
    }
  }
  j["cells"] = std::move(cells);

  nlohmann::ordered_json baseline = nlohmann::ordered_json::array();
  for (const auto& b : report.baseline) {
    nlohmann::ordered_json jb;
    jb["target"] = b.target;
    nlohmann::ordered_json body = scores_json(b.scores);
    for (auto& [k, v] : body.items()) jb[k] = v;
    baseline.push_back(std::move(jb));
  }
  j["baseline"] = std::move(baseline);

  nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
  for (const auto& d : report.deltas) {
    deltas.push_back(nlohmann::ordered_json{{"blind", d.blind},
                                            {"target", d.target},
                                            {"accuracy_delta", d.accuracy_delta},
                                            {"kappa_delta", d.kappa_delta}});
  }
  j["deltas"] = std::move(deltas);
  j["summary"] = nlohmann::ordered_json{{"mean_accuracy_mikro", report.mean_accuracy_mikro},
                                        {"mean_kappa_mikro", report.mean_kappa_mikro}};
  return j;
}

RunReport run_report_from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.run_id = j.at("run_id").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.config_echo = j.at("config");
    r.dataset_rows = j.at("dataset").at("rows").get<std::size_t>();
    r.dataset_columns = j.at("dataset").at("columns").get<std::vector<std::string>>();
    r.dataset_hash = j.at("dataset").at("content_hash").get<std::string>();

    const auto& plan = j.at("config").at("plan");
    r.matrix.blind_labels = plan.at("blind").get<std::vector<std::string>>();
    r.matrix.target_labels = plan.at("targets").get<std::vector<std::string>>();
    r.matrix.cells.resize(r.matrix.blind_labels.size() * r.matrix.target_labels.size());

    auto row_of = [&](const std::string& name) {
      auto it = std::find(r.matrix.blind_labels.begin(), r.matrix.blind_labels.end(), name);
      if (it == r.matrix.blind_labels.end())
        throw DataError("run report: cell names unknown blind '" + name + "'");
      return static_cast<std::size_t>(it - r.matrix.blind_labels.begin());
    };
    auto col_of = [&](const std::string& name) {
      auto it = std::find(r.matrix.target_labels.begin(), r.matrix.target_labels.end(), name);
      if (it == r.matrix.target_labels.end())
        throw DataError("run report: cell names unknown target '" + name + "'");
      return static_cast<std::size_t>(it - r.matrix.target_labels.begin());
    };

    for (const auto& jc : j.at("cells")) {
      std::size_t row = row_of(jc.at("blind").get<std::string>());
      std::size_t col = col_of(jc.at("target").get<std::string>());
      CellScores& cell = r.matrix.cell(row, col);
      if (jc.at("na").get<bool>()) {
        cell.na = true;
      } else {
        cell = scores_from(jc);
      }
    }

    for (const auto& jb : j.at("baseline")) {
      r.baseline.push_back(BaselineEntry{jb.at("target").get<std::string>(), scores_from(jb)});
    }
    if (j.contains("deltas")) {
      for (const auto& jd : j.at("deltas")) {
        r.deltas.push_back(AddedValueDelta{jd.at("blind").get<std::string>(),
                                           jd.at("target").get<std::string>(),
                                           jd.at("accuracy_delta").get<double>(),
                                           jd.at("kappa_delta").get<double>()});
      }
    }
    r.mean_accuracy_mikro = j.at("summary").at("mean_accuracy_mikro").get<double>();
    r.mean_kappa_mikro = j.at("summary").at("mean_kappa_mikro").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("run report: ") + e.what());
  }
  return r;
}

void emit_run_json(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << to_json(report).dump(2) << '\n';
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

RunReport load_run_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read '" + path.string() + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("run report '" + path.string() + "': " + e.what());
  }
  return run_report_from_json(j);
}

// ---------------------------------------------------------------------------
// SVG emission
// ---------------------------------------------------------------------------

namespace {

std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fx(double v) { return format_fixed(v, 2); }

/// Short display names: "Charge per Discharge" -> "Charge pp",
/// "Facility Total Charge" -> "Charge total".
std::string abbrev(std::string_view name) {
  constexpr std::string_view kPerDischarge = " per Discharge";
  constexpr std::string_view kFacilityTotal = "Facility Total ";
  std::string s(name);
  if (s.size() > kPerDischarge.size() &&
      s.compare(s.size() - kPerDischarge.size(), kPerDischarge.size(), kPerDischarge) == 0) {
    return s.substr(0, s.size() - kPerDischarge.size()) + " pp";
  }
  if (s.rfind(kFacilityTotal, 0) == 0) {
    return s.substr(kFacilityTotal.size()) + " total";
  }
  return s;
}

struct ChartCell {
  std::string blind;
  std::string target;
  std::string outer;  // cluster label
  ScoreTriple triple;
};

constexpr double kBarW = 7.0;
constexpr double kBarGap = 1.0;
constexpr double kGroupGap = 5.0;
constexpr double kClusterGap = 16.0;
constexpr double kPlotH = 300.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 48.0;
constexpr double kMarginB = 150.0;

const char* kStatColor[3] = {"#9ecae1", "#08519c", "#3182bd"};  // minus, plus, mikro
const char* kStatName[3] = {"minus", "plus", "mikro"};

std::string grouped_bar_svg(const std::vector<ChartCell>& cells, Metric metric,
                            std::string_view title) {
  const double lo = metric == Metric::Accuracy ? 0.0 : -1.0;
  const double hi = metric == Metric::Accuracy ? 100.0 : 1.0;
  auto y_of = [&](double v) { return kMarginT + (hi - v) / (hi - lo) * kPlotH; };

  const double group_w = 3 * kBarW + 2 * kBarGap;
  double x = kMarginL;
  std::vector<double> group_x(cells.size());
  std::vector<double> cluster_label_x;
  std::vector<std::string> cluster_label;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0 && cells[i].outer != cells[i - 1].outer) x += kClusterGap;
    if (i == 0 || cells[i].outer != cells[i - 1].outer) {
      cluster_label_x.push_back(x);
      cluster_label.push_back(cells[i].outer);
    }
    group_x[i] = x;
    x += group_w + kGroupGap;
  }
  const double width = x - kGroupGap + kMarginR;
  const double height = kMarginT + kPlotH + kMarginB;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fx(width) + "\" height=\"" +
       fx(height) + "\" viewBox=\"0 0 " + fx(width) + " " + fx(height) + "\">\n";
  s += "<text x=\"" + fx(kMarginL) + "\" y=\"24\" font-size=\"15\" font-family=\"sans-serif\">" +
       svg_escape(title) + "</text>\n";

  // Gridlines and axis labels.
  const double step = metric == Metric::Accuracy ? 25.0 : 0.5;
  for (double v = lo; v <= hi + 1e-9; v += step) {
    double y = y_of(v);
    s += "<line x1=\"" + fx(kMarginL - 4) + "\" y1=\"" + fx(y) + "\" x2=\"" +
         fx(width - kMarginR) + "\" y2=\"" + fx(y) +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fx(kMarginL - 8) + "\" y=\"" + fx(y + 4) +
         "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">" +
         format_fixed(v, metric == Metric::Accuracy ? 0 : 1) + "</text>\n";
  }
  // Emphasized zero line (kappa bars can hang below it).
  {
    double y0 = y_of(0.0);
    s += "<line x1=\"" + fx(kMarginL - 4) + "\" y1=\"" + fx(y0) + "\" x2=\"" +
         fx(width - kMarginR) + "\" y2=\"" + fx(y0) +
         "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const ChartCell& c = cells[i];
    const double values[3] = {c.triple.minus, c.triple.plus, c.triple.mikro};
    s += "<g class=\"bargroup\" data-blind=\"" + svg_escape(c.blind) + "\" data-target=\"" +
         svg_escape(c.target) + "\">\n";
    s += "<title>" + svg_escape(abbrev(c.target) + " when " + abbrev(c.blind) + " blinded") +
         "</title>\n";
    for (int b = 0; b < 3; ++b) {
      double v = values[b];
      double y_top = y_of(std::max(v, 0.0));
      double y_bot = y_of(std::min(v, 0.0));
      double bx = group_x[i] + b * (kBarW + kBarGap);
      s += "<rect class=\"bar\" data-stat=\"" + std::string(kStatName[b]) + "\" data-value=\"" +
           format_double(v) + "\" x=\"" + fx(bx) + "\" y=\"" + fx(y_top) + "\" width=\"" +
           fx(kBarW) + "\" height=\"" + fx(std::max(0.25, y_bot - y_top)) + "\" fill=\"" +
           kStatColor[b] + "\"/>\n";
    }
    s += "</g>\n";
  }

  // Cluster labels, rotated to stay legible at 10+ clusters.
  for (std::size_t i = 0; i < cluster_label.size(); ++i) {
    double lx = cluster_label_x[i] + 4;
    double ly = kMarginT + kPlotH + 14;
    s += "<text font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\" transform=\"rotate(-45 " +
         fx(lx) + " " + fx(ly) + ")\" x=\"" + fx(lx) + "\" y=\"" + fx(ly) + "\">" +
         svg_escape(abbrev(cluster_label[i])) + "</text>\n";
  }

  // Legend.
  double ly = kMarginT + kPlotH + kMarginB - 40;
  for (int b = 0; b < 3; ++b) {
    double lx = kMarginL + b * 110.0;
    const char* text = b == 0 ? "- (worst fold)" : (b == 1 ? "+ (best fold)" : "MIKRO (mean)");
    s += "<rect x=\"" + fx(lx) + "\" y=\"" + fx(ly - 9) +
         "\" width=\"10\" height=\"10\" fill=\"" + kStatColor[b] + "\"/>\n";
    s += "<text x=\"" + fx(lx + 14) + "\" y=\"" + fx(ly) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + text + "</text>\n";
  }
  s += "<text x=\"" + fx(kMarginL) + "\" y=\"" + fx(ly + 18) +
       "\" font-size=\"11\" font-family=\"sans-serif\">pp = per discharge / per person</text>\n";
  s += "</svg>\n";
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<ChartCell> collect_cells(const RedactionMatrix& m, bool by_target) {
  std::vector<ChartCell> cells;
  if (by_target) {
    for (std::size_t j = 0; j < m.target_labels.size(); ++j)
      for (std::size_t i = 0; i < m.blind_labels.size(); ++i) {
        const CellScores& c = m.cell(i, j);
        if (!c.na)
          cells.push_back({m.blind_labels[i], m.target_labels[j], m.target_labels[j],
                           ScoreTriple{}});
      }
  } else {
    for (std::size_t i = 0; i < m.blind_labels.size(); ++i)
      for (std::size_t j = 0; j < m.target_labels.size(); ++j) {
        const CellScores& c = m.cell(i, j);
        if (!c.na)
          cells.push_back({m.blind_labels[i], m.target_labels[j], m.blind_labels[i],
                           ScoreTriple{}});
      }
  }
  return cells;
}

void fill_triples(std::vector<ChartCell>& cells, const RedactionMatrix& m, Metric metric) {
  for (auto& cell : cells) {
    std::size_t i = std::find(m.blind_labels.begin(), m.blind_labels.end(), cell.blind) -
                    m.blind_labels.begin();
    std::size_t j = std::find(m.target_labels.begin(), m.target_labels.end(), cell.target) -
                    m.target_labels.begin();
    const CellScores& c = m.cell(i, j);
    cell.triple = metric == Metric::Accuracy ? c.accuracy : c.kappa;
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_charts(const RedactionMatrix& matrix,
                                               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  struct Spec {
    const char* file;
    Metric metric;
    bool by_target;
    const char* title;
  };
  const Spec specs[] = {
      {"graph2_accuracy_by_target.svg", Metric::Accuracy, true,
       "Accuracy range per predicted column, one bar group per blinded column"},
      {"graph3_kappa_by_target.svg", Metric::Kappa, true,
       "Kappa range per predicted column, one bar group per blinded column"},
      {"graph4_accuracy_by_blind.svg", Metric::Accuracy, false,
       "Accuracy range per blinded column, one bar group per predicted column"},
      {"graph5_kappa_by_blind.svg", Metric::Kappa, false,
       "Kappa range per blinded column, one bar group per predicted column"},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& spec : specs) {
    auto cells = collect_cells(matrix, spec.by_target);
    fill_triples(cells, matrix, spec.metric);
    write_text(out_dir / spec.file, grouped_bar_svg(cells, spec.metric, spec.title));
    written.push_back(out_dir / spec.file);
  }
  return written;
}

void emit_summary_chart(const Table& table, const std::filesystem::path& path) {
  const Column& flag = table.at(schema::kInOrOut);
  const Column& charge = table.at(schema::kTotalCharge);
  const Column& payment = table.at(schema::kTotalPayment);
  const Column& loss = table.at(schema::kTotalLoss);
  const Column& discharges = table.at(schema::kDischarges);
  for (const Column* c : {&charge, &payment, &loss, &discharges}) {
    if (c->kind != ColumnKind::Numeric)
      throw DataError("summary chart: column '" + c->name + "' must be numeric");
  }
  if (table.row_count == 0) throw DataError("summary chart: empty table");

  // Transactions ordered inpatient block first, stable within each block.
  std::vector<std::size_t> order;
  order.reserve(table.row_count);
  for (std::size_t r = 0; r < table.row_count; ++r)
    if (flag.token_at(r) == "IN") order.push_back(r);
  for (std::size_t r = 0; r < table.row_count; ++r)
    if (flag.token_at(r) != "IN") order.push_back(r);

  const double plot_w = 1000.0, plot_h = 320.0;
  const double ml = 84.0, mr = 84.0, mt = 44.0, mb = 72.0;
  const double width = ml + plot_w + mr, height = mt + plot_h + mb;

  double money_max = 1.0, disc_max = 1.0;
  for (std::size_t r = 0; r < table.row_count; ++r) {
    money_max = std::max({money_max, charge.numbers[r], payment.numbers[r], loss.numbers[r]});
    disc_max = std::max(disc_max, discharges.numbers[r]);
  }
  auto x_of = [&](std::size_t i) {
    if (order.size() == 1) return ml + plot_w / 2;
    return ml + plot_w * static_cast<double>(i) / static_cast<double>(order.size() - 1);
  };
  auto y_money = [&](double v) { return mt + (1.0 - v / money_max) * plot_h; };
  auto y_disc = [&](double v) { return mt + (1.0 - v / disc_max) * plot_h; };

  struct Series {
    const Column* col;
    const char* color;
    bool right_scale;
  };
  const Series series[] = {{&charge, "#1f77b4", false},
                           {&payment, "#2ca02c", false},
                           {&loss, "#d62728", false},
                           {&discharges, "#7f7f7f", true}};

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fx(width) + "\" height=\"" +
       fx(height) + "\" viewBox=\"0 0 " + fx(width) + " " + fx(height) + "\">\n";
  s += "<text x=\"" + fx(ml) + "\" y=\"22\" font-size=\"15\" font-family=\"sans-serif\">"
       "Facility totals and discharges by transaction (inpatient first, outpatient right)"
       "</text>\n";

  // Axes.
  s += "<line x1=\"" + fx(ml) + "\" y1=\"" + fx(mt) + "\" x2=\"" + fx(ml) + "\" y2=\"" +
       fx(mt + plot_h) + "\" stroke=\"#333333\"/>\n";
  s += "<line x1=\"" + fx(ml + plot_w) + "\" y1=\"" + fx(mt) + "\" x2=\"" + fx(ml + plot_w) +
       "\" y2=\"" + fx(mt + plot_h) + "\" stroke=\"#7f7f7f\"/>\n";
  s += "<line x1=\"" + fx(ml) + "\" y1=\"" + fx(mt + plot_h) + "\" x2=\"" + fx(ml + plot_w) +
       "\" y2=\"" + fx(mt + plot_h) + "\" stroke=\"#333333\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    double frac = tick / 4.0;
    s += "<text x=\"" + fx(ml - 6) + "\" y=\"" + fx(mt + (1 - frac) * plot_h + 4) +
         "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"end\">USD " +
         format_fixed(money_max * frac, 0) + "</text>\n";
    s += "<text x=\"" + fx(ml + plot_w + 6) + "\" y=\"" + fx(mt + (1 - frac) * plot_h + 4) +
         "\" font-size=\"10\" font-family=\"sans-serif\">" + format_fixed(disc_max * frac, 0) +
         "</text>\n";
  }

  for (const auto& sr : series) {
    s += "<polyline class=\"series\" data-name=\"" + svg_escape(sr.col->name) +
         "\" data-scale=\"" + (sr.right_scale ? "right" : "left") +
         "\" fill=\"none\" stroke=\"" + sr.color + "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < order.size(); ++i) {
      double v = sr.col->numbers[order[i]];
      double y = sr.right_scale ? y_disc(v) : y_money(v);
      if (i) s += ' ';
      s += fx(x_of(i)) + "," + fx(y);
    }
    s += "\"/>\n";
  }

  double ly = mt + plot_h + 36;
  double lx = ml;
  for (const auto& sr : series) {
    s += "<line x1=\"" + fx(lx) + "\" y1=\"" + fx(ly - 4) + "\" x2=\"" + fx(lx + 18) +
         "\" y2=\"" + fx(ly - 4) + "\" stroke=\"" + sr.color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fx(lx + 22) + "\" y=\"" + fx(ly) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + svg_escape(sr.col->name) +
         (sr.right_scale ? " (right scale)" : "") + "</text>\n";
    lx += 240.0;
  }
  s += "</svg>\n";
  write_text(path, s);
}

}  // namespace blindfold
