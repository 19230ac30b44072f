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


#ifndef ICURISK_PIPELINE_REPORT_H_
#define ICURISK_PIPELINE_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace icurisk::pipeline {

// A CSV artifact read back as text cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // NotFoundError for an unknown column.
  std::size_t Col(std::string_view name) const;
  const std::string& Cell(std::size_t row, std::string_view name) const;
  double Number(std::size_t row, std::string_view name) const;
};

// IoError when the file is missing or unreadable.
Table ReadTable(const std::filesystem::path& path);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Series {
  std::string name;
  std::vector<Point> points;
};

struct Bar {
  std::string label;
  double x0 = 0.0;
  double x1 = 0.0;
  double height = 0.0;
};

// (fpr, tpr) polyline from a roc_<family>.csv table.
Series RocSeries(const Table& roc, std::string name);
// One bar per feature with height = delta, largest delta first.
std::vector<Bar> AblationBars(const Table& ablation);
// Density-height bars; the areas sum to 1.
std::vector<Bar> HistogramBars(const Table& histogram);
// (edge, ale) polyline from an ale_<feature>.csv table.
Series AleSeries(const Table& ale, std::string name);

struct ChartLabels {
  std::string title;
  std::string x;
  std::string y;
};

std::string LineChartSvg(const ChartLabels& labels, const std::vector<Series>& series,
                         bool diagonal = false);
std::string HorizontalBarSvg(const ChartLabels& labels, const std::vector<Bar>& bars);
std::string HistogramSvg(const ChartLabels& labels, const std::vector<Bar>& bars,
                         double marker = -1.0);

struct ReportFiles {
  std::vector<std::string> written;  // relative to the run directory
};

// Renders summary.txt and SVG plots from the CSV artifacts of a completed
// run. IoError when the run failed or an artifact is missing.
ReportFiles EmitReport(const std::filesystem::path& run_dir);

}  // namespace icurisk::pipeline

#endif  // ICURISK_PIPELINE_REPORT_H_
