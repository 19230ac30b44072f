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


#ifndef ICURISK_DATAIO_SPLIT_H_
#define ICURISK_DATAIO_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/dataio/frame.h"

namespace icurisk::dataio {

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

struct FrameSplit {
  Frame train;
  Frame test;
};

// Number of test rows per class. The total is ceil(n * test_frac) and is
// shared out by floor(count_c * test_frac) plus largest remainders.
std::vector<std::size_t> StratifiedTestCounts(
    std::span<const std::size_t> class_counts, double test_frac);

SplitIndices StratifiedSplitIndices(std::span<const int> labels,
                                    double test_frac, uint64_t seed);
FrameSplit StratifiedSplit(const Frame& frame, double test_frac, uint64_t seed);

}  // namespace icurisk::dataio

#endif  // ICURISK_DATAIO_SPLIT_H_
