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


#include "icurisk/interpret/ale.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/dataio/csv.h"

namespace icurisk::interpret {
namespace {

std::size_t BinOf(const std::vector<double>& edges, double v) {
  // First edge index e >= 1 with v <= edges[e].
  const auto it = std::lower_bound(edges.begin() + 1, edges.end(), v);
  const auto e = static_cast<std::size_t>(it - edges.begin());
  return std::min(e, edges.size() - 1) - 1;
}

double InterpolateIn(const std::vector<double>& edges, const std::vector<double>& ale,
                     std::size_t bin, double v) {
  const double lo = edges[bin];
  const double hi = edges[bin + 1];
  const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  return ale[bin] + t * (ale[bin + 1] - ale[bin]);
}

}  // namespace

std::size_t AleCurve::num_rows() const {
  return std::accumulate(bin_counts.begin(), bin_counts.end(), std::size_t{0});
}

double AleCurve::Interpolate(double x) const {
  if (edges.empty()) return 0.0;
  if (x <= edges.front()) return ale.front();
  if (x >= edges.back()) return ale.back();
  return InterpolateIn(edges, ale, BinOf(edges, x), x);
}

nlohmann::ordered_json AleCurve::ToJson() const {
  nlohmann::ordered_json j;
  j["feature"] = feature;
  j["edges"] = edges;
  j["ale"] = ale;
  j["bin_counts"] = bin_counts;
  j["n"] = num_rows();
  return j;
}

AleCurve AleCurve::FromJson(const nlohmann::ordered_json& j) {
  AleCurve c;
  c.feature = j.at("feature").get<std::string>();
  c.edges = j.at("edges").get<std::vector<double>>();
  c.ale = j.at("ale").get<std::vector<double>>();
  c.bin_counts = j.at("bin_counts").get<std::vector<std::size_t>>();
  if (c.edges.size() < 2 || c.ale.size() != c.edges.size() ||
      c.bin_counts.size() + 1 != c.edges.size()) {
    throw DataError("malformed ALE curve for '" + c.feature + "'");
  }
  return c;
}

AleCurve AleFirstOrder(const models::ModelArtifact& model,
                       const dataio::Frame& frame, const std::string& feature,
                       const AleOptions& options, uint64_t seed) {
  if (options.n_bins < 2) throw InvalidArgumentError("ALE needs n_bins >= 2");
  const auto pos = std::find(model.feature_order.begin(), model.feature_order.end(),
                             feature);
  if (pos == model.feature_order.end()) {
    throw NotFoundError("feature '" + feature + "' is not a model feature");
  }
  const auto j = static_cast<std::size_t>(pos - model.feature_order.begin());
  const dataio::ColumnSpec& spec = frame.column(feature).spec;
  if (!spec.is_numeric_scale()) {
    throw InvalidArgumentError("ALE needs a continuous or score feature, '" +
                               feature + "' is " +
                               std::string(dataio::ColumnKindName(spec.kind)));
  }
  Matrix x = frame.ToMatrix(model.feature_order);
  if (options.max_rows > 0 && x.rows() > options.max_rows) {
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    Rng rng(seed);
    rng.Shuffle(rows);
    rows.resize(options.max_rows);
    std::sort(rows.begin(), rows.end());
    x = x.SelectRows(rows);
  }
  const std::size_t n = x.rows();
  std::vector<double> values = x.Column(j);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  AleCurve curve;
  curve.feature = feature;
  if (spec.kind == dataio::ColumnKind::kScore) {
    curve.edges = sorted;
  } else {
    for (int b = 0; b <= options.n_bins; ++b) {
      curve.edges.push_back(
          QuantileSorted(sorted, static_cast<double>(b) / options.n_bins));
    }
  }
  curve.edges.erase(std::unique(curve.edges.begin(), curve.edges.end()),
                    curve.edges.end());
  if (curve.edges.size() < 2) {
    throw DataError("ALE: feature '" + feature + "' has a single distinct value");
  }

  const std::size_t bins = curve.edges.size() - 1;
  std::vector<double> effect(bins, 0.0);
  curve.bin_counts.assign(bins, 0);
  std::vector<std::size_t> bin_of(n);
  std::vector<double> row;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t b = BinOf(curve.edges, values[r]);
    bin_of[r] = b;
    row.assign(x.Row(r).begin(), x.Row(r).end());
    row[j] = curve.edges[b + 1];
    const double upper = models::PredictOne(model, row);
    row[j] = curve.edges[b];
    const double lower = models::PredictOne(model, row);
    effect[b] += upper - lower;
    curve.bin_counts[b]++;
  }
  curve.ale.assign(curve.edges.size(), 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    const double mean_effect =
        curve.bin_counts[b] > 0 ? effect[b] / static_cast<double>(curve.bin_counts[b])
                                : 0.0;
    curve.ale[b + 1] = curve.ale[b] + mean_effect;
  }
  double center = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    center += InterpolateIn(curve.edges, curve.ale, bin_of[r], values[r]);
  }
  center /= static_cast<double>(n);
  for (double& a : curve.ale) a -= center;
  return curve;
}

void WriteAleCsv(std::ostream& out, const AleCurve& curve) {
  out << "edge,ale,count\n";
  for (std::size_t e = 0; e < curve.edges.size(); ++e) {
    out << dataio::FormatDouble(curve.edges[e]) << ','
        << dataio::FormatDouble(curve.ale[e]) << ','
        << (e == 0 ? 0 : curve.bin_counts[e - 1]) << '\n';
  }
}

AleCurve ReadAleCsv(std::istream& in, const std::string& feature) {
  AleCurve curve;
  curve.feature = feature;
  std::string line;
  if (!std::getline(in, line) || line.rfind("edge,ale,count", 0) != 0) {
    throw DataError("ALE CSV for '" + feature + "' lacks its header");
  }
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string edge, ale, count;
    std::getline(fields, edge, ',');
    std::getline(fields, ale, ',');
    std::getline(fields, count, ',');
    try {
      curve.edges.push_back(std::stod(edge));
      curve.ale.push_back(std::stod(ale));
      if (!first) curve.bin_counts.push_back(std::stoul(count));
    } catch (const std::exception&) {
      throw DataError("ALE CSV for '" + feature + "' has a bad row: " + line);
    }
    first = false;
  }
  if (curve.edges.size() < 2) throw DataError("ALE CSV for '" + feature + "' is empty");
  return curve;
}

}  // namespace icurisk::interpret
