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


#ifndef ICURISK_PREPROCESS_SCALING_H_
#define ICURISK_PREPROCESS_SCALING_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/dataio/frame.h"
#include "json.hpp"

namespace icurisk::preprocess {

struct MinMaxResult {
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
  bool constant = false;
};

// (x - min) / (max - min); a constant column maps to zeros and sets the flag.
MinMaxResult MinMaxScale(std::span<const double> values);
std::vector<double> InverseMinMax(std::span<const double> scaled, double min,
                                  double max);

struct ZScoreResult {
  std::vector<double> values;
  double mean = 0.0;
  double sd = 0.0;
  bool constant = false;
};

// (x - mean) / sd with the sample sd; a constant column maps to zeros.
ZScoreResult ZScore(std::span<const double> values);

enum class ScalerKind { kNone, kMinMax, kZScore };

std::string_view ScalerKindName(ScalerKind kind);
ScalerKind ParseScalerKind(std::string_view name);

// Per-feature x' = (x - shift) / scale, applied to matrix columns in order.
// Constant features carry scale 1 and are flagged.
struct AffineTransform {
  std::vector<double> shift;
  std::vector<double> scale;
  std::vector<bool> constant;

  bool empty() const { return shift.empty(); }
  std::size_t size() const { return shift.size(); }

  void ApplyInPlace(std::span<double> row) const;
  Matrix Apply(const Matrix& x) const;
  double Invert(std::size_t feature, double scaled) const;

  nlohmann::ordered_json ToJson() const;
  static AffineTransform FromJson(const nlohmann::ordered_json& j);

  static AffineTransform Identity(std::size_t n);
};

// Fits the transform on the given feature columns of a fully observed frame.
// Continuous and score columns are scaled; binary columns keep identity.
AffineTransform FitScaler(const dataio::Frame& frame,
                          std::span<const std::string> features,
                          ScalerKind kind);

}  // namespace icurisk::preprocess

#endif  // ICURISK_PREPROCESS_SCALING_H_
