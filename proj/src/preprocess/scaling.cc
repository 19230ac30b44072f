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


#include "icurisk/preprocess/scaling.h"

#include <algorithm>
#include <cmath>

#include "icurisk/common/error.h"
#include "icurisk/common/stats.h"

namespace icurisk::preprocess {

MinMaxResult MinMaxScale(std::span<const double> values) {
  MinMaxResult out;
  out.values.assign(values.size(), 0.0);
  if (values.empty()) {
    out.constant = true;
    return out;
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.min = *lo;
  out.max = *hi;
  const double range = out.max - out.min;
  if (!(range > 0.0)) {
    out.constant = true;
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.values[i] = std::clamp((values[i] - out.min) / range, 0.0, 1.0);
  }
  return out;
}

std::vector<double> InverseMinMax(std::span<const double> scaled, double min,
                                  double max) {
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    out[i] = min + scaled[i] * (max - min);
  }
  return out;
}

ZScoreResult ZScore(std::span<const double> values) {
  ZScoreResult out;
  out.values.assign(values.size(), 0.0);
  if (values.size() < 2) {
    out.constant = true;
    if (!values.empty()) out.mean = values[0];
    return out;
  }
  out.mean = Mean(values);
  out.sd = SampleSd(values);
  if (!(out.sd > 0.0)) {
    out.constant = true;
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.values[i] = (values[i] - out.mean) / out.sd;
  }
  return out;
}

std::string_view ScalerKindName(ScalerKind kind) {
  switch (kind) {
    case ScalerKind::kNone:
      return "none";
    case ScalerKind::kMinMax:
      return "minmax";
    case ScalerKind::kZScore:
      return "zscore";
  }
  return "none";
}

ScalerKind ParseScalerKind(std::string_view name) {
  if (name == "none") return ScalerKind::kNone;
  if (name == "minmax") return ScalerKind::kMinMax;
  if (name == "zscore") return ScalerKind::kZScore;
  throw ConfigError("unknown scaler '" + std::string(name) + "'");
}

void AffineTransform::ApplyInPlace(std::span<double> row) const {
  if (empty()) return;
  if (row.size() != shift.size()) {
    throw InvalidArgumentError("transform width does not match row width");
  }
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = (row[j] - shift[j]) / scale[j];
  }
}

Matrix AffineTransform::Apply(const Matrix& x) const {
  Matrix out = x;
  for (std::size_t r = 0; r < out.rows(); ++r) ApplyInPlace(out.Row(r));
  return out;
}

double AffineTransform::Invert(std::size_t feature, double scaled) const {
  return shift[feature] + scaled * scale[feature];
}

nlohmann::ordered_json AffineTransform::ToJson() const {
  nlohmann::ordered_json j;
  j["shift"] = shift;
  j["scale"] = scale;
  j["constant"] = constant;
  return j;
}

AffineTransform AffineTransform::FromJson(const nlohmann::ordered_json& j) {
  AffineTransform t;
  t.shift = j.at("shift").get<std::vector<double>>();
  t.scale = j.at("scale").get<std::vector<double>>();
  t.constant = j.at("constant").get<std::vector<bool>>();
  if (t.scale.size() != t.shift.size() || t.constant.size() != t.shift.size()) {
    throw DataError("affine transform arrays differ in length");
  }
  for (const double s : t.scale) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DataError("affine transform scale must be positive");
    }
  }
  return t;
}

AffineTransform AffineTransform::Identity(std::size_t n) {
  AffineTransform t;
  t.shift.assign(n, 0.0);
  t.scale.assign(n, 1.0);
  t.constant.assign(n, false);
  return t;
}

AffineTransform FitScaler(const dataio::Frame& frame,
                          std::span<const std::string> features,
                          ScalerKind kind) {
  AffineTransform t = AffineTransform::Identity(features.size());
  if (kind == ScalerKind::kNone) return t;
  for (std::size_t j = 0; j < features.size(); ++j) {
    const dataio::Column& c = frame.column(features[j]);
    if (c.CountMissing() > 0) {
      throw DataError("cannot fit scaler on column '" + features[j] +
                      "' with missing cells");
    }
    if (!c.spec.is_numeric_scale()) continue;
    if (kind == ScalerKind::kMinMax) {
      const MinMaxResult r = MinMaxScale(c.values);
      t.shift[j] = r.min;
      t.scale[j] = r.constant ? 1.0 : r.max - r.min;
      t.constant[j] = r.constant;
    } else {
      const ZScoreResult r = ZScore(c.values);
      t.shift[j] = r.mean;
      t.scale[j] = r.constant ? 1.0 : r.sd;
      t.constant[j] = r.constant;
    }
  }
  return t;
}

}  // namespace icurisk::preprocess
