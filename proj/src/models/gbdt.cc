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


#include "icurisk/models/gbdt.h"

#include <algorithm>
#include <cmath>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/trees/forest.h"
#include "icurisk/trees/tree.h"

namespace icurisk::models {

double MeanLogLoss(std::span<const double> probs, std::span<const int> y) {
  constexpr double kEps = 1e-15;
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs[i], kEps, 1.0 - kEps);
    s -= y[i] == 1 ? std::log(p) : std::log1p(-p);
  }
  return probs.empty() ? 0.0 : s / static_cast<double>(probs.size());
}

ModelArtifact FitGbdt(const Matrix& x, std::span<const int> y,
                      const GbdtOptions& options, uint64_t seed,
                      std::vector<double>* train_loss) {
  CheckTrainingInputs(x, y);
  if (!(options.learning_rate > 0.0)) {
    throw InvalidArgumentError("gbdt: learning_rate must be > 0");
  }
  if (options.n_iters < 0) throw InvalidArgumentError("gbdt: n_iters < 0");
  if (options.max_depth < 1) throw InvalidArgumentError("gbdt: max_depth < 1");
  if (!(options.subsample > 0.0 && options.subsample <= 1.0)) {
    throw InvalidArgumentError("gbdt: subsample must be in (0, 1]");
  }
  if (!(options.l2_leaf >= 0.0)) throw InvalidArgumentError("gbdt: l2_leaf < 0");

  const std::size_t n = x.rows();
  double positives = 0.0;
  for (const int label : y) positives += label;
  const double rate = std::clamp(positives / static_cast<double>(n), 1e-12, 1.0 - 1e-12);

  GbdtParams params;
  params.base_score = std::log(rate / (1.0 - rate));
  std::vector<double> score(n, params.base_score);
  std::vector<double> prob(n);
  std::vector<double> grad(n);
  std::vector<double> hess(n);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) prob[i] = Sigmoid(score[i]);
  };
  refresh();
  if (train_loss) {
    train_loss->clear();
    train_loss->push_back(MeanLogLoss(prob, y));
  }

  const trees::PresortedData data(x);
  trees::GrowOptions grow;
  grow.max_depth = options.max_depth;
  grow.min_leaf = options.min_leaf;
  grow.features_per_split = 0;
  std::vector<double> weights(n, 1.0);

  for (int it = 0; it < options.n_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = prob[i] - y[i];
      hess[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-16);
    }
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(it)));
    if (options.subsample < 1.0) {
      weights = trees::SampleRows(n, trees::RowSampling::kSubsample,
                                  options.subsample, rng);
    }
    const trees::NewtonCriterion criterion(grad, hess, options.l2_leaf);
    trees::Tree tree = trees::GrowTree(data, weights, criterion, grow, &rng);
    for (double& v : tree.mutable_values()) v *= options.learning_rate;
    for (std::size_t i = 0; i < n; ++i) score[i] += tree.Predict(x.Row(i))[0];
    params.trees.push_back(std::move(tree));
    refresh();
    if (train_loss) train_loss->push_back(MeanLogLoss(prob, y));
  }

  ModelArtifact model;
  model.family = Family::kGbdt;
  model.feature_order = DefaultFeatureNames(x.cols());
  model.params = std::move(params);
  model.meta.seed = seed;
  model.meta.iterations = options.n_iters;
  model.meta.degenerate = IsSingleClass(y);
  model.meta.hyperparams = {{"n_iters", options.n_iters},
                            {"learning_rate", options.learning_rate},
                            {"max_depth", options.max_depth},
                            {"min_leaf", options.min_leaf},
                            {"subsample", options.subsample},
                            {"l2_leaf", options.l2_leaf}};
  return model;
}

}  // namespace icurisk::models
