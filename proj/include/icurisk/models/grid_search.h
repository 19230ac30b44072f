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


#ifndef ICURISK_MODELS_GRID_SEARCH_H_
#define ICURISK_MODELS_GRID_SEARCH_H_

#include <cstdint>
#include <vector>

#include "icurisk/balance/folds.h"
#include "icurisk/balance/recipe.h"
#include "icurisk/dataio/frame.h"
#include "icurisk/models/fit.h"

namespace icurisk::models {

struct GridRow {
  Json hyperparams;
  std::vector<double> fold_auroc;
  double mean_auroc = 0.0;
  // Held-out predictions indexed by row of the searched frame.
  std::vector<double> oof;
};

struct GridResult {
  Json best;
  std::size_t best_index = 0;
  std::vector<GridRow> table;  // lattice order
};

// Scores every lattice point by mean held-out AUROC under cross-validation.
// `base` supplies everything except family and hyperparams. Score ties go to
// the lower ConfigCost, then to the lexicographically smaller serialization.
GridResult GridSearch(const dataio::Frame& frame, const HyperGrid& grid,
                      const balance::FoldPlan& plan, const balance::Recipe& base,
                      uint64_t seed);

// Same search over folds already prepared with balance::PrepareFolds.
GridResult GridSearch(const std::vector<balance::PreparedFold>& folds,
                      const HyperGrid& grid, const balance::FoldPlan& plan,
                      const balance::Recipe& base, uint64_t seed);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_GRID_SEARCH_H_
