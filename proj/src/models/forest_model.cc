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


#include "icurisk/models/forest_model.h"

#include "icurisk/common/error.h"
#include "icurisk/trees/forest.h"

namespace icurisk::models {

ModelArtifact FitForest(const Matrix& x, std::span<const int> y,
                        const ForestModelOptions& options, uint64_t seed) {
  CheckTrainingInputs(x, y);
  if (options.n_trees < 1) throw InvalidArgumentError("forest: n_trees < 1");
  if (options.max_depth < 0) throw InvalidArgumentError("forest: max_depth < 0");
  trees::ForestOptions forest;
  forest.num_trees = options.n_trees;
  forest.max_depth = options.max_depth;
  forest.min_leaf = options.min_leaf;
  forest.features_per_split = -1;
  forest.sampling = trees::RowSampling::kBootstrap;
  const auto fitted = trees::ClassificationForest::Fit(x, y, 2, forest, seed);

  ModelArtifact model;
  model.family = Family::kForest;
  model.feature_order = DefaultFeatureNames(x.cols());
  model.params = ForestParams{fitted.trees()};
  model.meta.seed = seed;
  model.meta.degenerate = IsSingleClass(y);
  model.meta.hyperparams = {{"n_trees", options.n_trees},
                            {"max_depth", options.max_depth},
                            {"min_leaf", options.min_leaf}};
  return model;
}

}  // namespace icurisk::models
