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


#ifndef ICURISK_BALANCE_FOLDS_H_
#define ICURISK_BALANCE_FOLDS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace icurisk::balance {

// k disjoint row-index sets covering all rows; each class is dealt round-robin
// so per-fold class counts differ by at most one.
struct FoldPlan {
  int k = 0;
  uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;  // ascending indices

  std::size_t num_rows() const;
  // All rows outside fold `f`, ascending.
  std::vector<std::size_t> TrainingRows(int f) const;

  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

FoldPlan StratifiedKFold(std::span<const int> labels, int k, uint64_t seed);

// Text form: "k <k>", "seed <seed>", then one "fold <i>: idx idx ..." line
// per fold.
void WriteFoldPlan(std::ostream& out, const FoldPlan& plan);
FoldPlan ReadFoldPlan(std::istream& in);

}  // namespace icurisk::balance

#endif  // ICURISK_BALANCE_FOLDS_H_
