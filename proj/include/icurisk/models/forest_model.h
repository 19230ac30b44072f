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


#ifndef ICURISK_MODELS_FOREST_MODEL_H_
#define ICURISK_MODELS_FOREST_MODEL_H_

#include <cstdint>
#include <span>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

struct ForestModelOptions {
  int n_trees = 200;
  int max_depth = 0;  // 0 = unlimited
  double min_leaf = 1.0;
};

// Bootstrap forest of Gini trees with sqrt(d) candidate features per split.
ModelArtifact FitForest(const Matrix& x, std::span<const int> y,
                        const ForestModelOptions& options, uint64_t seed);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_FOREST_MODEL_H_
