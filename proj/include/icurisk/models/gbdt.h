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


#ifndef ICURISK_MODELS_GBDT_H_
#define ICURISK_MODELS_GBDT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

struct GbdtOptions {
  int n_iters = 200;
  double learning_rate = 0.1;
  int max_depth = 3;
  double min_leaf = 1.0;
  double subsample = 1.0;
  double l2_leaf = 1.0;
};

// Gradient-boosted trees on binary log-loss from a log-odds base score; each
// leaf takes the damped Newton step -G / (H + l2_leaf) scaled by the learning
// rate. When `train_loss` is set it receives the mean training log-loss before
// the first tree and after each one (n_iters + 1 entries).
ModelArtifact FitGbdt(const Matrix& x, std::span<const int> y,
                      const GbdtOptions& options, uint64_t seed,
                      std::vector<double>* train_loss = nullptr);

double MeanLogLoss(std::span<const double> probs, std::span<const int> y);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_GBDT_H_
