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


#include "icurisk/trees/tree.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "icurisk/common/error.h"

namespace icurisk::trees {

PresortedData::PresortedData(const Matrix& x)
    : num_rows_(x.rows()), columns_(x.cols()), order_(x.cols()) {
  if (x.rows() > std::numeric_limits<uint32_t>::max()) {
    throw InvalidArgumentError("too many rows for tree fitting");
  }
  for (std::size_t f = 0; f < x.cols(); ++f) {
    columns_[f] = x.Column(f);
    std::vector<uint32_t>& order = order_[f];
    order.resize(num_rows_);
    std::iota(order.begin(), order.end(), 0u);
    const std::vector<double>& col = columns_[f];
    std::stable_sort(order.begin(), order.end(),
                     [&col](uint32_t a, uint32_t b) { return col[a] < col[b]; });
  }
}

std::span<const double> Tree::Predict(std::span<const double> x) const {
  int32_t i = 0;
  while (nodes_[i].feature >= 0) {
    const TreeNode& n = nodes_[i];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return {values_.data() + nodes_[i].value_offset, value_width_};
}

int Tree::Depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> depth(nodes_.size(), 0);
  int max_depth = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    if (n.feature < 0) continue;
    depth[n.left] = depth[n.right] = depth[i] + 1;
    max_depth = std::max(max_depth, depth[i] + 1);
  }
  return max_depth;
}

bool GiniCriterion::IsPure(const double* stats) const {
  for (std::size_t k = 0; k < num_classes_; ++k) {
    if (stats[1 + k] == stats[0]) return true;
  }
  return false;
}

void GiniCriterion::LeafValue(const double* stats, double* out) const {
  for (std::size_t k = 0; k < num_classes_; ++k) {
    out[k] = stats[0] > 0 ? stats[1 + k] / stats[0] : 0.0;
  }
}

double GiniCriterion::WeightedImpurity(const double* stats) const {
  if (stats[0] <= 0) return 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < num_classes_; ++k) sum_sq += stats[1 + k] * stats[1 + k];
  return stats[0] - sum_sq / stats[0];
}

bool VarianceCriterion::IsPure(const double* stats) const {
  return Sse(stats) <= 1e-12 * (1.0 + std::abs(stats[2]));
}

template <typename Criterion>
Tree GrowTree(const PresortedData& data, std::span<const double> row_weights,
              const Criterion& criterion, const GrowOptions& options, Rng* rng) {
  const std::size_t n = data.num_rows();
  const std::size_t d = data.num_features();
  const std::size_t width = criterion.stats_width();
  const std::size_t value_width = criterion.value_width();
  if (row_weights.size() != n) {
    throw InvalidArgumentError("row weight count does not match the data");
  }
  std::vector<uint64_t> keys(d);
  if (options.feature_keys.empty()) {
    std::iota(keys.begin(), keys.end(), uint64_t{0});
  } else if (options.feature_keys.size() == d) {
    std::copy(options.feature_keys.begin(), options.feature_keys.end(), keys.begin());
  } else {
    throw InvalidArgumentError("feature key count does not match the data");
  }
  const std::size_t mtry =
      options.features_per_split <= 0
          ? d
          : std::min<std::size_t>(d, static_cast<std::size_t>(options.features_per_split));
  const bool restricted = mtry < d;
  if (restricted && rng == nullptr) {
    throw InvalidArgumentError("feature sampling requires a random source");
  }
  const double min_leaf = std::max(options.min_leaf, 1e-12);

  Tree tree(value_width);
  std::vector<TreeNode>& nodes = tree.mutable_nodes();
  std::vector<double>& values = tree.mutable_values();

  std::vector<int32_t> slot_of(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    if (row_weights[r] > 0) slot_of[r] = 0;
  }
  std::vector<std::vector<uint32_t>> sorted(d);
  for (std::size_t f = 0; f < d; ++f) {
    for (const uint32_t r : data.order(f)) {
      if (row_weights[r] > 0) sorted[f].push_back(r);
    }
  }

  nodes.emplace_back();
  std::vector<int32_t> level_nodes = {0};
  std::vector<double> stats;
  std::vector<double> left;
  std::vector<double> right(width);
  std::vector<std::pair<uint64_t, uint32_t>> priority(d);
  int depth = 0;

  while (!level_nodes.empty()) {
    const std::size_t num_slots = level_nodes.size();
    stats.assign(num_slots * width, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const int32_t s = slot_of[r];
      if (s >= 0) {
        criterion.Accumulate(static_cast<uint32_t>(r), row_weights[r],
                             &stats[static_cast<std::size_t>(s) * width]);
      }
    }

    std::vector<uint8_t> can_split(num_slots, 0);
    bool any_splittable = false;
    for (std::size_t s = 0; s < num_slots; ++s) {
      const double* st = &stats[s * width];
      TreeNode& node = nodes[level_nodes[s]];
      node.weight = st[0];
      node.value_offset = static_cast<uint32_t>(values.size());
      values.resize(values.size() + value_width);
      criterion.LeafValue(st, &values[node.value_offset]);
      const bool depth_ok = options.max_depth <= 0 || depth < options.max_depth;
      can_split[s] = depth_ok && st[0] >= 2 * min_leaf && !criterion.IsPure(st);
      any_splittable = any_splittable || can_split[s];
    }
    if (!any_splittable) break;

    std::vector<uint8_t> mask;
    std::vector<uint8_t> feature_used(d, restricted ? 0 : 1);
    if (restricted) {
      mask.assign(num_slots * d, 0);
      for (std::size_t s = 0; s < num_slots; ++s) {
        if (!can_split[s]) continue;
        const uint64_t nonce = (*rng)();
        for (std::size_t f = 0; f < d; ++f) {
          priority[f] = {Mix64(nonce ^ keys[f]), static_cast<uint32_t>(f)};
        }
        std::partial_sort(priority.begin(),
                          priority.begin() + static_cast<std::ptrdiff_t>(mtry),
                          priority.end());
        for (std::size_t k = 0; k < mtry; ++k) {
          mask[s * d + priority[k].second] = 1;
          feature_used[priority[k].second] = 1;
        }
      }
    }

    std::vector<double> best_gain(num_slots, -std::numeric_limits<double>::infinity());
    std::vector<int32_t> best_feature(num_slots, -1);
    std::vector<uint64_t> best_key(num_slots, 0);
    std::vector<double> best_threshold(num_slots, 0.0);
    std::vector<double> last(num_slots, 0.0);
    std::vector<uint8_t> has_last(num_slots, 0);
    left.assign(num_slots * width, 0.0);

    for (std::size_t f = 0; f < d; ++f) {
      if (!feature_used[f]) continue;
      std::fill(left.begin(), left.end(), 0.0);
      std::fill(has_last.begin(), has_last.end(), 0);
      const std::span<const double> col = data.column(f);
      for (const uint32_t r : sorted[f]) {
        const int32_t si = slot_of[r];
        if (si < 0) continue;
        const auto s = static_cast<std::size_t>(si);
        if (!can_split[s] || (restricted && !mask[s * d + f])) continue;
        const double v = col[r];
        double* lhs = &left[s * width];
        if (has_last[s] && v > last[s]) {
          const double* parent = &stats[s * width];
          if (lhs[0] >= min_leaf && parent[0] - lhs[0] >= min_leaf) {
            for (std::size_t k = 0; k < width; ++k) right[k] = parent[k] - lhs[k];
            const double gain = criterion.Gain(parent, lhs, right.data());
            if (gain > best_gain[s] ||
                (gain == best_gain[s] && best_feature[s] >= 0 &&
                 keys[f] < best_key[s])) {
              best_gain[s] = gain;
              best_feature[s] = static_cast<int32_t>(f);
              best_key[s] = keys[f];
              // Largest left value, so routing depends on order only.
              best_threshold[s] = last[s];
            }
          }
        }
        criterion.Accumulate(r, row_weights[r], lhs);
        last[s] = v;
        has_last[s] = 1;
      }
    }

    std::vector<int32_t> next_nodes;
    std::vector<int32_t> child_slot(num_slots * 2, -1);
    for (std::size_t s = 0; s < num_slots; ++s) {
      if (!can_split[s] || best_feature[s] < 0) continue;
      const double parent_weight = stats[s * width];
      if (!(best_gain[s] > 1e-12 * (1.0 + parent_weight))) continue;
      const auto left_index = static_cast<int32_t>(nodes.size());
      nodes.emplace_back();
      nodes.emplace_back();
      TreeNode& parent = nodes[level_nodes[s]];
      parent.feature = best_feature[s];
      parent.threshold = best_threshold[s];
      parent.gain = best_gain[s];
      parent.left = left_index;
      parent.right = left_index + 1;
      child_slot[2 * s] = static_cast<int32_t>(next_nodes.size());
      next_nodes.push_back(left_index);
      child_slot[2 * s + 1] = static_cast<int32_t>(next_nodes.size());
      next_nodes.push_back(left_index + 1);
    }

    for (std::size_t r = 0; r < n; ++r) {
      const int32_t s = slot_of[r];
      if (s < 0) continue;
      const TreeNode& node = nodes[level_nodes[s]];
      if (node.feature < 0) {
        slot_of[r] = -1;
      } else {
        const bool go_left = data.column(node.feature)[r] <= node.threshold;
        slot_of[r] = child_slot[2 * s + (go_left ? 0 : 1)];
      }
    }
    for (std::size_t f = 0; f < d; ++f) {
      std::erase_if(sorted[f], [&](uint32_t r) { return slot_of[r] < 0; });
    }
    level_nodes = std::move(next_nodes);
    ++depth;
  }
  return tree;
}

template Tree GrowTree<GiniCriterion>(const PresortedData&, std::span<const double>,
                                      const GiniCriterion&, const GrowOptions&, Rng*);
template Tree GrowTree<VarianceCriterion>(const PresortedData&,
                                          std::span<const double>,
                                          const VarianceCriterion&,
                                          const GrowOptions&, Rng*);
template Tree GrowTree<NewtonCriterion>(const PresortedData&, std::span<const double>,
                                        const NewtonCriterion&, const GrowOptions&,
                                        Rng*);

}  // namespace icurisk::trees
