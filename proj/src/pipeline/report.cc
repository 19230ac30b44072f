/*
 * Copyright 2026 The icurisk Authors.
 *
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


#include "icurisk/pipeline/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "icurisk/common/error.h"
#include "icurisk/dataio/csv.h"

namespace icurisk::pipeline {
namespace fs = std::filesystem;
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Xml(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Frame2d {
  double x_min, x_max, y_min, y_max;
  double Px(double x) const {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  }
  double Py(double y) const {
    return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  }
};

void Widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
}

std::string Open(const ChartLabels& labels) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
    << Xml(labels.title) << "</text>\n"
    << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\" font-size=\"12\">" << Xml(labels.x) << "</text>\n"
    << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
    << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
    << (kTop + kHeight - kBottom) / 2 << ")\">" << Xml(labels.y) << "</text>\n";
  return o.str();
}

std::string Axes(const Frame2d& f, bool x_ticks = true) {
  std::ostringstream o;
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
    << "\" height=\"" << kHeight - kTop - kBottom
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    const double yv = f.y_min + t * (f.y_max - f.y_min);
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << Fixed(f.Py(yv) + 4, 2)
      << "\" text-anchor=\"end\" font-size=\"10\">" << Fixed(yv, 3) << "</text>\n";
    if (x_ticks) {
      const double xv = f.x_min + t * (f.x_max - f.x_min);
      o << "<text x=\"" << Fixed(f.Px(xv), 2) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << Fixed(xv, 3) << "</text>\n";
    }
  }
  return o.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<fs::path> Matching(const fs::path& dir, std::string_view prefix) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".csv") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Stem(const fs::path& path, std::string_view prefix) {
  return path.stem().string().substr(prefix.size());
}

}  // namespace

std::size_t Table::Col(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw NotFoundError("no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

const std::string& Table::Cell(std::size_t row, std::string_view name) const {
  return rows.at(row).at(Col(name));
}

double Table::Number(std::size_t row, std::string_view name) const {
  const std::string& text = Cell(row, name);
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("cell '" + text + "' in column '" + std::string(name) +
                    "' is not a number");
  }
  return v;
}

Table ReadTable(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing artifact '" + path.string() + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty artifact '" + path.string() + "'");
  t.header = dataio::SplitCsvLine(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(dataio::SplitCsvLine(line));
    if (t.rows.back().size() != t.header.size()) {
      throw DataError(path.string() + ": ragged row " + std::to_string(t.rows.size()));
    }
  }
  return t;
}

Series RocSeries(const Table& roc, std::string name) {
  Series s{std::move(name), {}};
  for (std::size_t r = 0; r < roc.rows.size(); ++r) {
    s.points.push_back({roc.Number(r, "fpr"), roc.Number(r, "tpr")});
  }
  return s;
}

std::vector<Bar> AblationBars(const Table& ablation) {
  std::vector<Bar> bars;
  for (std::size_t r = 0; r < ablation.rows.size(); ++r) {
    bars.push_back({ablation.Cell(r, "feature"), 0.0, 0.0, ablation.Number(r, "delta")});
  }
  std::stable_sort(bars.begin(), bars.end(),
                   [](const Bar& a, const Bar& b) { return a.height > b.height; });
  return bars;
}

std::vector<Bar> HistogramBars(const Table& histogram) {
  std::vector<Bar> bars;
  for (std::size_t r = 0; r < histogram.rows.size(); ++r) {
    bars.push_back({histogram.Cell(r, "count"), histogram.Number(r, "bin_low"),
                    histogram.Number(r, "bin_high"), histogram.Number(r, "density")});
  }
  return bars;
}

Series AleSeries(const Table& ale, std::string name) {
  Series s{std::move(name), {}};
  for (std::size_t r = 0; r < ale.rows.size(); ++r) {
    s.points.push_back({ale.Number(r, "edge"), ale.Number(r, "ale")});
  }
  return s;
}

std::string LineChartSvg(const ChartLabels& labels, const std::vector<Series>& series,
                         bool diagonal) {
  Frame2d f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (const Series& s : series) {
    for (const Point& p : s.points) {
      f.x_min = std::min(f.x_min, p.x);
      f.x_max = std::max(f.x_max, p.x);
      f.y_min = std::min(f.y_min, p.y);
      f.y_max = std::max(f.y_max, p.y);
    }
  }
  if (diagonal || f.x_min > f.x_max) f = {0.0, 1.0, 0.0, 1.0};
  Widen(f.x_min, f.x_max);
  Widen(f.y_min, f.y_max);

  std::ostringstream o;
  o << Open(labels) << Axes(f);
  if (diagonal) {
    o << "<line x1=\"" << f.Px(0) << "\" y1=\"" << f.Py(0) << "\" x2=\"" << f.Px(1)
      << "\" y2=\"" << f.Py(1) << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const Point& p : series[i].points) {
      o << Fixed(f.Px(p.x), 2) << ',' << Fixed(f.Py(p.y), 2) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kHeight - kBottom - 10 - 16.0 * i
      << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
      << Xml(series[i].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string HorizontalBarSvg(const ChartLabels& labels, const std::vector<Bar>& bars) {
  double lo = 0.0, hi = 0.0;
  for (const Bar& b : bars) {
    lo = std::min(lo, b.height);
    hi = std::max(hi, b.height);
  }
  Widen(lo, hi);
  const double left = 200.0;
  const double plot_w = kWidth - left - kRight;
  const double row_h = bars.empty() ? 1.0 : (kHeight - kTop - kBottom) / bars.size();
  auto px = [&](double v) { return left + (v - lo) / (hi - lo) * plot_w; };

  std::ostringstream o;
  o << Open(labels);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double y = kTop + row_h * i;
    const double a = px(std::min(0.0, bars[i].height));
    const double b = px(std::max(0.0, bars[i].height));
    o << "<rect x=\"" << Fixed(a, 2) << "\" y=\"" << Fixed(y + row_h * 0.1, 2)
      << "\" width=\"" << Fixed(b - a, 2) << "\" height=\"" << Fixed(row_h * 0.8, 2)
      << "\" fill=\"" << (bars[i].height >= 0 ? kPalette[0] : kPalette[1]) << "\"/>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << Fixed(y + row_h * 0.5 + 4, 2)
      << "\" text-anchor=\"end\" font-size=\"11\">" << Xml(bars[i].label) << "</text>\n";
  }
  o << "<line x1=\"" << Fixed(px(0), 2) << "\" y1=\"" << kTop << "\" x2=\"" << Fixed(px(0), 2)
    << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + i / 4.0 * (hi - lo);
    o << "<text x=\"" << Fixed(px(v), 2) << "\" y=\"" << kHeight - kBottom + 16
      << "\" text-anchor=\"middle\" font-size=\"10\">" << Fixed(v, 3) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string HistogramSvg(const ChartLabels& labels, const std::vector<Bar>& bars,
                         double marker) {
  Frame2d f{0.0, 1.0, 0.0, 0.0};
  if (!bars.empty()) {
    f.x_min = bars.front().x0;
    f.x_max = bars.back().x1;
  }
  for (const Bar& b : bars) f.y_max = std::max(f.y_max, b.height);
  Widen(f.x_min, f.x_max);
  Widen(f.y_min, f.y_max);
  std::ostringstream o;
  o << Open(labels) << Axes(f);
  for (const Bar& b : bars) {
    o << "<rect x=\"" << Fixed(f.Px(b.x0), 2) << "\" y=\"" << Fixed(f.Py(b.height), 2)
      << "\" width=\"" << Fixed(f.Px(b.x1) - f.Px(b.x0), 2) << "\" height=\""
      << Fixed(f.Py(0) - f.Py(b.height), 2) << "\" fill=\"" << kPalette[0]
      << "\" stroke=\"white\"/>\n";
  }
  if (marker >= f.x_min && marker <= f.x_max) {
    o << "<line x1=\"" << Fixed(f.Px(marker), 2) << "\" y1=\"" << kTop << "\" x2=\""
      << Fixed(f.Px(marker), 2) << "\" y2=\"" << kHeight - kBottom << "\" stroke=\""
      << kPalette[1] << "\" stroke-dasharray=\"5 3\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

ReportFiles EmitReport(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) {
    throw IoError("run directory '" + run_dir.string() + "' does not exist");
  }
  if (fs::exists(run_dir / "FAILED")) {
    throw IoError("run in '" + run_dir.string() + "' failed; see its FAILED marker");
  }
  if (!fs::exists(run_dir / "run_report.json")) {
    throw IoError("missing artifact '" + (run_dir / "run_report.json").string() + "'");
  }
  const Table metrics = ReadTable(run_dir / "metrics.csv");
  const Table ablation = ReadTable(run_dir / "ablation.csv");
  const Table histogram = ReadTable(run_dir / "posterior_histogram.csv");
  const Table posterior = ReadTable(run_dir / "posterior_summary.csv");
  const Table comparison = ReadTable(run_dir / "cohort_comparison.csv");
  const std::vector<fs::path> roc_files = Matching(run_dir, "roc_");
  if (roc_files.empty()) throw IoError("missing artifact 'roc_<family>.csv'");

  ReportFiles files;
  std::vector<Series> roc;
  for (const fs::path& p : roc_files) roc.push_back(RocSeries(ReadTable(p), Stem(p, "roc_")));
  WriteText(run_dir / "roc.svg",
            LineChartSvg({"ROC curves (test split)", "False positive rate",
                          "True positive rate"},
                         roc, true));
  files.written.push_back("roc.svg");

  const std::vector<Bar> ablation_bars = AblationBars(ablation);
  WriteText(run_dir / "ablation.svg",
            HorizontalBarSvg({"Ablation: AUROC drop per removed feature", "Delta AUROC", ""},
                             ablation_bars));
  files.written.push_back("ablation.svg");

  constexpr int kStats = 9;
  std::string stat[kStats];
  const char* names[kStats] = {"family", "n_samples", "seed",   "mean",      "sd",
                               "q025",   "median",    "q975",   "prevalence"};
  for (std::size_t r = 0; r < posterior.rows.size(); ++r) {
    for (int k = 0; k < kStats; ++k) {
      if (posterior.Cell(r, "statistic") == names[k]) stat[k] = posterior.Cell(r, "value");
    }
  }
  const double prevalence = stat[8].empty() ? -1.0 : std::stod(stat[8]);
  WriteText(run_dir / "posterior_histogram.svg",
            HistogramSvg({"Posterior risk under non-survivor priors", "Predicted risk",
                          "Density"},
                         HistogramBars(histogram), prevalence));
  files.written.push_back("posterior_histogram.svg");

  for (const fs::path& p : Matching(run_dir, "ale_")) {
    const std::string feature = Stem(p, "ale_");
    const std::string out = "ale_" + feature + ".svg";
    WriteText(run_dir / out,
              LineChartSvg({"ALE: " + feature, feature, "Centered effect on risk"},
                           {AleSeries(ReadTable(p), feature)}));
    files.written.push_back(out);
  }

  std::ostringstream s;
  s << "Run summary: " << run_dir.filename().string() << "\n\n";
  s << "Model performance (metrics.csv)\n";
  s << "  model     split  auroc   ci_low  ci_high sens    spec    threshold\n";
  for (std::size_t r = 0; r < metrics.rows.size(); ++r) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-9s %-6s %.4f  %.4f  %.4f  %.4f  %.4f  %.4f\n",
                  metrics.Cell(r, "model").c_str(), metrics.Cell(r, "split").c_str(),
                  metrics.Number(r, "auroc"), metrics.Number(r, "ci_low"),
                  metrics.Number(r, "ci_high"), metrics.Number(r, "sensitivity"),
                  metrics.Number(r, "specificity"), metrics.Number(r, "threshold"));
    s << line;
  }
  s << "\nCohort comparison, Welch t-test (cohort_comparison.csv)\n";
  for (std::size_t r = 0; r < comparison.rows.size(); ++r) {
    char line[200];
    std::snprintf(line, sizeof(line), "  %-28s survivor %.4g  non-survivor %.4g  p %.3g\n",
                  comparison.Cell(r, "feature").c_str(),
                  comparison.Number(r, "survivor_mean"),
                  comparison.Number(r, "nonsurvivor_mean"), comparison.Number(r, "p"));
    s << line;
  }
  s << "\nAblation, sorted by delta (ablation.csv)\n";
  for (const Bar& b : ablation_bars) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-28s %+.4f\n", b.label.c_str(), b.height);
    s << line;
  }
  s << "\nPosterior risk (posterior_summary.csv)\n";
  for (int k = 0; k < kStats; ++k) {
    if (!stat[k].empty()) s << "  " << names[k] << ": " << stat[k] << '\n';
  }
  WriteText(run_dir / "summary.txt", s.str());
  files.written.push_back("summary.txt");
  return files;
}

}  // namespace icurisk::pipeline
