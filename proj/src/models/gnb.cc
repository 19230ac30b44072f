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


#include "icurisk/models/gnb.h"

#include <algorithm>

#include "icurisk/common/error.h"

namespace icurisk::models {

ModelArtifact FitGnb(const Matrix& x, std::span<const int> y,
                     const GnbOptions& options) {
  CheckTrainingInputs(x, y);
  if (!(options.var_smoothing >= 0.0)) {
    throw InvalidArgumentError("gnb: var_smoothing must be >= 0");
  }
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();

  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += x(r, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) var += (x(r, j) - mean) * (x(r, j) - mean);
    max_var = std::max(max_var, var / static_cast<double>(n));
  }
  double epsilon = options.var_smoothing * max_var;
  if (!(epsilon > 0.0)) epsilon = 1e-300;

  GnbParams p;
  double count[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    p.mean[c].assign(d, 0.0);
    p.variance[c].assign(d, 0.0);
  }
  for (std::size_t r = 0; r < n; ++r) {
    count[y[r]] += 1.0;
    for (std::size_t j = 0; j < d; ++j) p.mean[y[r]][j] += x(r, j);
  }
  for (int c = 0; c < 2; ++c) {
    if (count[c] > 0) {
      for (double& m : p.mean[c]) m /= count[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x(r, j) - p.mean[y[r]][j];
      p.variance[y[r]][j] += diff * diff;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (double& v : p.variance[c]) {
      v = (count[c] > 0 ? v / count[c] : 0.0) + epsilon;
    }
    p.prior[c] = count[c] / static_cast<double>(n);
  }

  ModelArtifact model;
  model.family = Family::kGnb;
  model.feature_order = DefaultFeatureNames(d);
  model.params = std::move(p);
  model.meta.degenerate = IsSingleClass(y);
  model.meta.hyperparams = {{"var_smoothing", options.var_smoothing}};
  return model;
}

}  // namespace icurisk::models
