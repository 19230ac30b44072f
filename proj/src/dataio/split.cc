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


#include "icurisk/dataio/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"

namespace icurisk::dataio {

std::vector<std::size_t> StratifiedTestCounts(
    std::span<const std::size_t> class_counts, double test_frac) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) {
    throw InvalidArgumentError("test_frac must lie in (0, 1)");
  }
  const std::size_t n =
      std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
  // The epsilon keeps exact products such as 10 * 0.3 from rounding up.
  const auto total = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) * test_frac - 1e-9));
  std::vector<std::size_t> counts(class_counts.size());
  std::vector<double> remainder(class_counts.size());
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < class_counts.size(); ++c) {
    const double quota = static_cast<double>(class_counts[c]) * test_frac;
    counts[c] = static_cast<std::size_t>(std::floor(quota + 1e-9));
    remainder[c] = quota - static_cast<double>(counts[c]);
    assigned += counts[c];
  }
  std::vector<std::size_t> order(class_counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < total && k < order.size(); ++k) {
    if (counts[order[k]] < class_counts[order[k]]) {
      ++counts[order[k]];
      ++assigned;
    }
  }
  return counts;
}

SplitIndices StratifiedSplitIndices(std::span<const int> labels,
                                    double test_frac, uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_class(2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i] != 0 ? 1 : 0].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw DataError("stratified split needs at least 2 rows of class " +
                      std::to_string(c) + ", found " +
                      std::to_string(by_class[c].size()));
    }
  }
  const std::vector<std::size_t> sizes = {by_class[0].size(), by_class[1].size()};
  const std::vector<std::size_t> test_counts = StratifiedTestCounts(sizes, test_frac);

  Rng rng(seed);
  SplitIndices out;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t>& rows = by_class[c];
    rng.Shuffle(rows);
    out.test.insert(out.test.end(), rows.begin(),
                    rows.begin() + static_cast<std::ptrdiff_t>(test_counts[c]));
    out.train.insert(out.train.end(),
                     rows.begin() + static_cast<std::ptrdiff_t>(test_counts[c]),
                     rows.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

FrameSplit StratifiedSplit(const Frame& frame, double test_frac, uint64_t seed) {
  const std::vector<int> y = frame.Labels();
  const SplitIndices idx = StratifiedSplitIndices(y, test_frac, seed);
  return {frame.SelectRows(idx.train), frame.SelectRows(idx.test)};
}

}  // namespace icurisk::dataio
