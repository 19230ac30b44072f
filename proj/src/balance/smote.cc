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


#include "icurisk/balance/smote.h"

#include <algorithm>
#include <numeric>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"

namespace icurisk::balance {

Matrix Smote(const Matrix& minority, std::size_t n_synthetic, int k_neighbors,
             uint64_t seed, const std::vector<bool>& binary_columns) {
  const std::size_t m = minority.rows();
  const std::size_t d = minority.cols();
  if (m < 2) {
    throw DataError("smote needs at least 2 minority rows, got " + std::to_string(m));
  }
  if (k_neighbors < 1) throw InvalidArgumentError("smote: k_neighbors must be >= 1");
  if (!binary_columns.empty() && binary_columns.size() != d) {
    throw InvalidArgumentError("smote: binary column mask width mismatch");
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_neighbors), m - 1);

  std::vector<std::vector<std::size_t>> neighbors(m);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < m; ++i) {
    dist.clear();
    const auto xi = minority.Row(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const auto xj = minority.Row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += (xi[c] - xj[c]) * (xi[c] - xj[c]);
      dist.emplace_back(s, j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k), dist.end());
    for (std::size_t t = 0; t < k; ++t) neighbors[i].push_back(dist[t].second);
  }

  Rng rng(seed);
  Matrix out(n_synthetic, d);
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const std::size_t base = rng.UniformIndex(m);
    const std::size_t nn = neighbors[base][rng.UniformIndex(k)];
    const double u = rng.UniformOpen();
    const auto x = minority.Row(base);
    const auto y = minority.Row(nn);
    auto row = out.Row(s);
    for (std::size_t c = 0; c < d; ++c) {
      row[c] = x[c] + u * (y[c] - x[c]);
      if (!binary_columns.empty() && binary_columns[c]) {
        row[c] = row[c] >= 0.5 ? 1.0 : 0.0;
      }
    }
  }
  return out;
}

BalancedData BalanceWithSmote(const Matrix& x, std::span<const int> y,
                              int k_neighbors, uint64_t seed,
                              const std::vector<bool>& binary_columns) {
  if (x.rows() != y.size()) {
    throw InvalidArgumentError("smote: label count does not match rows");
  }
  std::size_t count[2] = {0, 0};
  for (const int label : y) count[label == 1 ? 1 : 0]++;
  BalancedData out;
  out.x = x;
  out.y.assign(y.begin(), y.end());
  if (count[0] == count[1]) return out;
  const int minority_class = count[1] < count[0] ? 1 : 0;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == minority_class) rows.push_back(i);
  }
  const std::size_t needed = std::max(count[0], count[1]) - rows.size();
  const Matrix synthetic =
      Smote(x.SelectRows(rows), needed, k_neighbors, seed, binary_columns);
  for (std::size_t r = 0; r < synthetic.rows(); ++r) {
    out.x.AppendRow(synthetic.Row(r));
    out.y.push_back(minority_class);
  }
  out.synthetic_rows = needed;
  return out;
}

}  // namespace icurisk::balance
