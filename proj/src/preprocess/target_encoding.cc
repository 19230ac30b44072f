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


#include "icurisk/preprocess/target_encoding.h"

#include <cmath>

#include "icurisk/common/error.h"

namespace icurisk::preprocess {
namespace {

const std::string& LevelOf(const dataio::Column& column, std::size_t row) {
  const auto code = static_cast<std::size_t>(column.values[row]);
  return column.levels.at(code);
}

}  // namespace

TargetEncoder TargetEncoder::Fit(const dataio::Column& column,
                                 std::span<const int> labels,
                                 std::span<const std::size_t> fit_rows,
                                 double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw InvalidArgumentError("target encoding smoothing must be >= 0");
  }
  if (column.spec.kind != dataio::ColumnKind::kCategorical) {
    throw InvalidArgumentError("column '" + column.spec.name +
                               "' is not categorical");
  }
  if (labels.size() != column.size()) {
    throw InvalidArgumentError("label length does not match column length");
  }
  if (fit_rows.empty()) throw DataError("target encoder needs fit rows");

  TargetEncoder enc;
  enc.column_ = column.spec.name;
  enc.m_ = m;
  std::map<std::string, std::pair<double, double>> sums;  // level -> (n, pos)
  double total = 0.0;
  for (const std::size_t r : fit_rows) {
    const int y = labels[r];
    if (y != 0 && y != 1) {
      throw DataError("label missing or non-binary on a target-encoding fit row");
    }
    total += y;
    if (column.is_missing(r)) continue;
    auto& s = sums[LevelOf(column, r)];
    s.first += 1.0;
    s.second += y;
  }
  enc.global_mean_ = total / static_cast<double>(fit_rows.size());
  for (const auto& [level, s] : sums) {
    const double denom = s.first + m;
    enc.encoding_[level] =
        denom > 0.0 ? (s.second + m * enc.global_mean_) / denom : enc.global_mean_;
  }
  return enc;
}

double TargetEncoder::Encode(const std::string& level) const {
  const auto it = encoding_.find(level);
  return it == encoding_.end() ? global_mean_ : it->second;
}

dataio::Column TargetEncoder::Transform(const dataio::Column& column) const {
  dataio::ColumnSpec spec = column.spec;
  spec.kind = dataio::ColumnKind::kContinuous;
  std::vector<double> values(column.size());
  for (std::size_t r = 0; r < column.size(); ++r) {
    values[r] = column.is_missing(r) ? global_mean_ : Encode(LevelOf(column, r));
  }
  return dataio::MakeColumn(std::move(spec), std::move(values));
}

nlohmann::ordered_json TargetEncoder::ToJson() const {
  nlohmann::ordered_json j;
  j["column"] = column_;
  j["smoothing"] = m_;
  j["global_mean"] = global_mean_;
  nlohmann::ordered_json levels = nlohmann::ordered_json::object();
  for (const auto& [level, v] : encoding_) levels[level] = v;
  j["levels"] = std::move(levels);
  return j;
}

TargetEncoder TargetEncoder::FromJson(const nlohmann::ordered_json& j) {
  TargetEncoder enc;
  enc.column_ = j.at("column").get<std::string>();
  enc.m_ = j.at("smoothing").get<double>();
  enc.global_mean_ = j.at("global_mean").get<double>();
  for (const auto& [level, v] : j.at("levels").items()) {
    enc.encoding_[level] = v.get<double>();
  }
  return enc;
}

}  // namespace icurisk::preprocess
