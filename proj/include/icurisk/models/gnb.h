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


#ifndef ICURISK_MODELS_GNB_H_
#define ICURISK_MODELS_GNB_H_

#include <span>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

struct GnbOptions {
  double var_smoothing = 1e-9;
};

// Gaussian naive Bayes with per-class population variances, each floored by
// adding var_smoothing times the largest per-feature variance of x.
ModelArtifact FitGnb(const Matrix& x, std::span<const int> y,
                     const GnbOptions& options = {});

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_GNB_H_
