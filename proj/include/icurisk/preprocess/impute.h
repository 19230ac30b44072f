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


#ifndef ICURISK_PREPROCESS_IMPUTE_H_
#define ICURISK_PREPROCESS_IMPUTE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "icurisk/dataio/frame.h"

namespace icurisk::preprocess {

// Replacement value for one column's missing cells.
struct ColumnFill {
  std::string column;
  double value = 0.0;
};

// Median of observed cells for continuous/score columns, mode (smallest on
// ties) for binary/categorical columns. The label column is skipped. Throws
// DataError on a fully-missing column.
std::vector<ColumnFill> FitMedianMode(const dataio::Frame& frame);
dataio::Frame ApplyFills(const dataio::Frame& frame,
                         const std::vector<ColumnFill>& fills);
dataio::Frame ImputeMedianMode(const dataio::Frame& frame);

struct IterativeImputeOptions {
  int max_iter = 10;
  double tol = 1e-3;
  int num_trees = 25;
  int max_depth = 8;
  double sample_fraction = 0.8;
};

struct IterativeImputeTrace {
  int sweeps = 0;
  // Mean absolute change of imputed continuous cells after each sweep.
  std::vector<double> changes;
};

// Iterative forest imputation: start from median/mode, then repeatedly refit a
// small forest per incomplete column (increasing missingness order) on the
// rows where it is observed and re-predict its missing cells from the other
// feature columns. Regression forests for continuous columns, classification
// otherwise. Sweeps continue while the previous sweep's mean absolute change
// is >= tol, up to max_iter sweeps.
dataio::Frame ImputeIterativeForest(const dataio::Frame& frame,
                                    const IterativeImputeOptions& options,
                                    uint64_t seed,
                                    IterativeImputeTrace* trace = nullptr);

}  // namespace icurisk::preprocess

#endif  // ICURISK_PREPROCESS_IMPUTE_H_
