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


#include "icurisk/models/grid_search.h"

#include <cmath>

#include "icurisk/common/error.h"

namespace icurisk::models {

GridResult GridSearch(const dataio::Frame& frame, const HyperGrid& grid,
                      const balance::FoldPlan& plan, const balance::Recipe& base,
                      uint64_t seed) {
  if (grid.axes.empty()) throw ConfigError("empty hyperparameter grid");
  return GridSearch(balance::PrepareFolds(frame, plan, base, seed), grid, plan, base,
                    seed);
}

GridResult GridSearch(const std::vector<balance::PreparedFold>& folds,
                      const HyperGrid& grid, const balance::FoldPlan& plan,
                      const balance::Recipe& base, uint64_t seed) {
  const std::vector<Json> lattice = grid.Lattice();
  if (grid.axes.empty() || lattice.empty()) throw ConfigError("empty hyperparameter grid");
  balance::Recipe recipe = base;
  recipe.family = grid.family;

  GridResult result;
  for (const Json& point : lattice) {
    recipe.hyperparams = point;
    const balance::CvResult cv =
        balance::EvaluatePreparedFolds(folds, plan, recipe, seed);
    GridRow row;
    row.hyperparams = point;
    for (const auto& r : cv.folds) row.fold_auroc.push_back(r.auroc);
    row.mean_auroc = cv.mean_auroc;
    row.oof = cv.oof;
    result.table.push_back(std::move(row));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.table.size(); ++i) {
    const GridRow& a = result.table[i];
    const GridRow& b = result.table[best];
    if (std::abs(a.mean_auroc - b.mean_auroc) > 1e-12) {
      if (a.mean_auroc > b.mean_auroc) best = i;
      continue;
    }
    const double cost_a = ConfigCost(grid.family, a.hyperparams);
    const double cost_b = ConfigCost(grid.family, b.hyperparams);
    if (cost_a != cost_b) {
      if (cost_a < cost_b) best = i;
      continue;
    }
    if (a.hyperparams.dump() < b.hyperparams.dump()) best = i;
  }
  result.best_index = best;
  result.best = result.table[best].hyperparams;
  return result;
}

}  // namespace icurisk::models
