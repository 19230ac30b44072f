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


#ifndef ICURISK_BALANCE_SMOTE_H_
#define ICURISK_BALANCE_SMOTE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/common/matrix.h"

namespace icurisk::balance {

// Synthetic minority rows x + u * (nn - x) with u uniform on the open interval
// (0, 1), x a uniformly drawn minority row and nn one of its k nearest
// minority neighbors (Euclidean, ties by row index). k is capped at m - 1.
// Columns flagged in `binary_columns` are re-thresholded at 0.5.
Matrix Smote(const Matrix& minority, std::size_t n_synthetic, int k_neighbors,
             uint64_t seed, const std::vector<bool>& binary_columns = {});

struct BalancedData {
  Matrix x;
  std::vector<int> y;
  std::size_t synthetic_rows = 0;
};

// Appends minority-class synthetic rows until both classes are equal in size.
BalancedData BalanceWithSmote(const Matrix& x, std::span<const int> y,
                              int k_neighbors, uint64_t seed,
                              const std::vector<bool>& binary_columns = {});

}  // namespace icurisk::balance

#endif  // ICURISK_BALANCE_SMOTE_H_
