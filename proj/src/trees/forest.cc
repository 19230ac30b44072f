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


#include "icurisk/trees/forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"

namespace icurisk::trees {

int ResolveFeaturesPerSplit(int requested, std::size_t num_features) {
  if (requested == 0) return 0;
  if (requested < 0) {
    return std::max(1, static_cast<int>(std::floor(
                           std::sqrt(static_cast<double>(num_features)))));
  }
  return requested;
}

std::vector<double> SampleRows(std::size_t n, RowSampling sampling,
                               double fraction, Rng& rng) {
  if (!(fraction > 0.0)) throw InvalidArgumentError("sample fraction must be > 0");
  std::vector<double> weights(n, 0.0);
  const auto draws = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction)));
  if (sampling == RowSampling::kBootstrap) {
    for (std::size_t i = 0; i < draws; ++i) weights[rng.UniformIndex(n)] += 1.0;
  } else {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const std::size_t k = std::min(draws, n);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(rows[i], rows[i + rng.UniformIndex(n - i)]);
      weights[rows[i]] = 1.0;
    }
  }
  return weights;
}

ClassificationForest ClassificationForest::Fit(const Matrix& x,
                                               std::span<const int> labels,
                                               int num_classes,
                                               const ForestOptions& options,
                                               uint64_t seed) {
  if (x.rows() != labels.size()) {
    throw InvalidArgumentError("forest: label count does not match rows");
  }
  if (x.rows() < 2) throw InvalidArgumentError("forest: need at least 2 rows");
  if (options.num_trees < 1) throw InvalidArgumentError("forest: num_trees < 1");
  for (const int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw InvalidArgumentError("forest: label outside [0, num_classes)");
    }
  }
  const PresortedData data(x);
  const GiniCriterion criterion(labels, num_classes);
  GrowOptions grow;
  grow.max_depth = options.max_depth;
  grow.min_leaf = options.min_leaf;
  grow.features_per_split = ResolveFeaturesPerSplit(options.features_per_split, x.cols());
  grow.feature_keys = options.feature_keys;

  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(options.num_trees));
  for (int t = 0; t < options.num_trees; ++t) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(t)));
    const std::vector<double> weights =
        SampleRows(x.rows(), options.sampling, options.sample_fraction, rng);
    trees.push_back(GrowTree(data, weights, criterion, grow, &rng));
  }
  return ClassificationForest(std::move(trees), num_classes, x.cols());
}

std::vector<double> ClassificationForest::PredictProba(std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(num_classes_), 0.0);
  for (const Tree& tree : trees_) {
    const auto leaf = tree.Predict(x);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += leaf[k];
  }
  for (double& v : out) v /= static_cast<double>(trees_.size());
  return out;
}

std::vector<double> ClassificationForest::GiniImportance() const {
  std::vector<double> importance(num_features_, 0.0);
  for (const Tree& tree : trees_) {
    const auto& nodes = tree.nodes();
    if (nodes.empty() || nodes.front().weight <= 0) continue;
    const double root_weight = nodes.front().weight;
    for (const TreeNode& node : nodes) {
      if (node.feature >= 0) importance[node.feature] += node.gain / root_weight;
    }
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0) {
    for (double& v : importance) v /= total;
  }
  return importance;
}

RegressionForest RegressionForest::Fit(const Matrix& x,
                                       std::span<const double> targets,
                                       const ForestOptions& options,
                                       uint64_t seed) {
  if (x.rows() != targets.size()) {
    throw InvalidArgumentError("forest: target count does not match rows");
  }
  if (x.rows() < 2) throw InvalidArgumentError("forest: need at least 2 rows");
  const PresortedData data(x);
  const VarianceCriterion criterion(targets);
  GrowOptions grow;
  grow.max_depth = options.max_depth;
  grow.min_leaf = options.min_leaf;
  grow.features_per_split = ResolveFeaturesPerSplit(options.features_per_split, x.cols());
  grow.feature_keys = options.feature_keys;

  RegressionForest forest;
  for (int t = 0; t < options.num_trees; ++t) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(t)));
    const std::vector<double> weights =
        SampleRows(x.rows(), options.sampling, options.sample_fraction, rng);
    forest.trees_.push_back(GrowTree(data, weights, criterion, grow, &rng));
  }
  return forest;
}

double RegressionForest::Predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const Tree& tree : trees_) sum += tree.Predict(x)[0];
  return trees_.empty() ? 0.0 : sum / static_cast<double>(trees_.size());
}

}  // namespace icurisk::trees
