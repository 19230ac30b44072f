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


#ifndef ICURISK_TREES_TREE_H_
#define ICURISK_TREES_TREE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/common/random.h"

namespace icurisk::trees {

// Column-major copy of a feature matrix with every column's row order sorted
// by value (ties by row index). Built once per fit and shared by all trees.
class PresortedData {
 public:
  explicit PresortedData(const Matrix& x);

  std::size_t num_rows() const { return num_rows_; }
  std::size_t num_features() const { return columns_.size(); }
  std::span<const double> column(std::size_t f) const { return columns_[f]; }
  std::span<const uint32_t> order(std::size_t f) const { return order_[f]; }

 private:
  std::size_t num_rows_ = 0;
  std::vector<std::vector<double>> columns_;
  std::vector<std::vector<uint32_t>> order_;
};

struct TreeNode {
  int32_t feature = -1;  // -1 for leaves
  double threshold = 0.0;  // rows with x <= threshold go left
  int32_t left = -1;
  int32_t right = -1;
  // Weighted sample count that reached the node.
  double weight = 0.0;
  // Criterion improvement of the split (0 for leaves). For Gini this is
  // weight * impurity decrease.
  double gain = 0.0;
  uint32_t value_offset = 0;
};

// Binary decision tree with vector-valued leaves (class distribution,
// regression mean, or boosting score).
class Tree {
 public:
  Tree() = default;
  explicit Tree(std::size_t value_width) : value_width_(value_width) {}

  std::size_t value_width() const { return value_width_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<TreeNode>& mutable_nodes() { return nodes_; }
  std::vector<double>& mutable_values() { return values_; }

  // Leaf values for one example. `x` is indexed by feature.
  std::span<const double> Predict(std::span<const double> x) const;
  int Depth() const;

 private:
  std::size_t value_width_ = 1;
  std::vector<TreeNode> nodes_;
  std::vector<double> values_;  // value_width_ entries per node
};

struct GrowOptions {
  int max_depth = 0;        // 0 = unlimited
  double min_leaf = 1.0;    // minimum weighted count on each side of a split
  int features_per_split = 0;  // 0 = all features
  // Identity of each feature for candidate sampling and gain ties. When
  // empty, feature indices are used. Keys tied to feature names make a fit
  // equivariant under column permutations.
  std::span<const uint64_t> feature_keys;
};

// Split criterion interface (duck-typed):
//   std::size_t stats_width() const;       // stats[0] is the weighted count
//   void Accumulate(uint32_t row, double w, double* stats) const;
//   double Gain(const double* parent, const double* left,
//               const double* right) const;
//   bool IsPure(const double* stats) const;
//   std::size_t value_width() const;
//   void LeafValue(const double* stats, double* out) const;

// Gini impurity over integer classes 0..num_classes-1.
class GiniCriterion {
 public:
  GiniCriterion(std::span<const int> labels, int num_classes)
      : labels_(labels), num_classes_(num_classes) {}

  std::size_t stats_width() const { return 1 + num_classes_; }
  void Accumulate(uint32_t row, double w, double* stats) const {
    stats[0] += w;
    stats[1 + labels_[row]] += w;
  }
  double Gain(const double* parent, const double* left, const double* right) const {
    return WeightedImpurity(parent) - WeightedImpurity(left) -
           WeightedImpurity(right);
  }
  bool IsPure(const double* stats) const;
  std::size_t value_width() const { return num_classes_; }
  void LeafValue(const double* stats, double* out) const;

  // weight * (1 - sum p_k^2)
  double WeightedImpurity(const double* stats) const;

 private:
  std::span<const int> labels_;
  std::size_t num_classes_;
};

// Squared-error reduction for real targets.
class VarianceCriterion {
 public:
  explicit VarianceCriterion(std::span<const double> targets) : targets_(targets) {}

  std::size_t stats_width() const { return 3; }
  void Accumulate(uint32_t row, double w, double* stats) const {
    const double y = targets_[row];
    stats[0] += w;
    stats[1] += w * y;
    stats[2] += w * y * y;
  }
  double Gain(const double* parent, const double* left, const double* right) const {
    return Sse(parent) - Sse(left) - Sse(right);
  }
  bool IsPure(const double* stats) const;
  std::size_t value_width() const { return 1; }
  void LeafValue(const double* stats, double* out) const {
    out[0] = stats[0] > 0 ? stats[1] / stats[0] : 0.0;
  }

 private:
  static double Sse(const double* s) {
    return s[0] > 0 ? s[2] - s[1] * s[1] / s[0] : 0.0;
  }
  std::span<const double> targets_;
};

// Second-order boosting criterion on per-row gradient g and hessian h with
// L2 leaf damping lambda; leaves hold the Newton step -G / (H + lambda).
class NewtonCriterion {
 public:
  NewtonCriterion(std::span<const double> gradients,
                  std::span<const double> hessians, double l2)
      : gradients_(gradients), hessians_(hessians), l2_(l2) {}

  std::size_t stats_width() const { return 3; }
  void Accumulate(uint32_t row, double w, double* stats) const {
    stats[0] += w;
    stats[1] += w * gradients_[row];
    stats[2] += w * hessians_[row];
  }
  double Gain(const double* parent, const double* left, const double* right) const {
    return 0.5 * (Score(left) + Score(right) - Score(parent));
  }
  bool IsPure(const double*) const { return false; }
  std::size_t value_width() const { return 1; }
  void LeafValue(const double* stats, double* out) const {
    out[0] = -stats[1] / (stats[2] + l2_);
  }

 private:
  double Score(const double* s) const { return s[1] * s[1] / (s[2] + l2_); }
  std::span<const double> gradients_;
  std::span<const double> hessians_;
  double l2_;
};

// Grows one tree level by level with exact greedy splits on the presorted
// columns. Rows with zero weight are ignored; `rng` is only used when
// options.features_per_split restricts the candidate features.
template <typename Criterion>
Tree GrowTree(const PresortedData& data, std::span<const double> row_weights,
              const Criterion& criterion, const GrowOptions& options, Rng* rng);

extern template Tree GrowTree<GiniCriterion>(const PresortedData&,
                                             std::span<const double>,
                                             const GiniCriterion&,
                                             const GrowOptions&, Rng*);
extern template Tree GrowTree<VarianceCriterion>(const PresortedData&,
                                                 std::span<const double>,
                                                 const VarianceCriterion&,
                                                 const GrowOptions&, Rng*);
extern template Tree GrowTree<NewtonCriterion>(const PresortedData&,
                                               std::span<const double>,
                                               const NewtonCriterion&,
                                               const GrowOptions&, Rng*);

}  // namespace icurisk::trees

#endif  // ICURISK_TREES_TREE_H_
