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


#ifndef ICURISK_MODELS_FIT_H_
#define ICURISK_MODELS_FIT_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

// Recognized keys and defaults per family:
//   logistic: penalty "l2", c 1.0, tol 1e-6, max_iter 10000
//   gnb:      var_smoothing 1e-9
//   forest:   n_trees 200, max_depth 0 (unlimited), min_leaf 1
//   gbdt:     n_iters 200, learning_rate 0.1, max_depth 3, min_leaf 1,
//             subsample 1.0, l2_leaf 1.0
//   mlp:      hidden_units 16, learning_rate 0.001, batch_size 32,
//             epochs 200, alpha 1e-4
// Unknown keys and ill-typed values raise ConfigError.
Json ResolveHyperparams(Family family, const Json& overrides);

// Fits one family on a model-space matrix. `hyperparams` may be partial.
ModelArtifact FitFamily(Family family, const Matrix& x, std::span<const int> y,
                        const Json& hyperparams, uint64_t seed);

// Named axes of candidate values.
struct HyperGrid {
  Family family = Family::kLogistic;
  std::vector<std::pair<std::string, std::vector<Json>>> axes;

  // Cartesian product in axis order, last axis varying fastest.
  std::vector<Json> Lattice() const;
  Json ToJson() const;
  static HyperGrid FromJson(Family family, const Json& axes);
};

HyperGrid DefaultGrid(Family family);

// Cost used to break score ties: fewer iterations/trees/units first.
double ConfigCost(Family family, const Json& hyperparams);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_FIT_H_
