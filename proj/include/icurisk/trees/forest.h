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


#ifndef ICURISK_TREES_FOREST_H_
#define ICURISK_TREES_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/trees/tree.h"

namespace icurisk::trees {

enum class RowSampling {
  kBootstrap,  // draw round(n * sample_fraction) rows with replacement
  kSubsample,  // draw round(n * sample_fraction) rows without replacement
};

struct ForestOptions {
  int num_trees = 200;
  int max_depth = 0;  // 0 = unlimited
  double min_leaf = 1.0;
  // Candidate features per split; 0 = all, -1 = floor(sqrt(d)).
  int features_per_split = -1;
  RowSampling sampling = RowSampling::kBootstrap;
  double sample_fraction = 1.0;
  std::vector<uint64_t> feature_keys;
};

// Per-row weights for one tree's sample.
std::vector<double> SampleRows(std::size_t n, RowSampling sampling,
                               double fraction, Rng& rng);

class ClassificationForest {
 public:
  ClassificationForest() = default;
  ClassificationForest(std::vector<Tree> trees, int num_classes,
                       std::size_t num_features)
      : trees_(std::move(trees)),
        num_classes_(num_classes),
        num_features_(num_features) {}

  // Labels must lie in [0, num_classes).
  static ClassificationForest Fit(const Matrix& x, std::span<const int> labels,
                                  int num_classes, const ForestOptions& options,
                                  uint64_t seed);

  // Mean of the per-tree leaf class frequencies.
  std::vector<double> PredictProba(std::span<const double> x) const;

  // Sum over split nodes of (node sample fraction) * (Gini decrease),
  // accumulated over trees and normalized to sum to one. All zeros when no
  // tree split.
  std::vector<double> GiniImportance() const;

  const std::vector<Tree>& trees() const { return trees_; }
  int num_classes() const { return num_classes_; }
  std::size_t num_features() const { return num_features_; }

 private:
  std::vector<Tree> trees_;
  int num_classes_ = 2;
  std::size_t num_features_ = 0;
};

class RegressionForest {
 public:
  static RegressionForest Fit(const Matrix& x, std::span<const double> targets,
                              const ForestOptions& options, uint64_t seed);
  double Predict(std::span<const double> x) const;
  const std::vector<Tree>& trees() const { return trees_; }

 private:
  std::vector<Tree> trees_;
};

int ResolveFeaturesPerSplit(int requested, std::size_t num_features);

}  // namespace icurisk::trees

#endif  // ICURISK_TREES_FOREST_H_
