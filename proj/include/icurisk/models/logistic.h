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


#ifndef ICURISK_MODELS_LOGISTIC_H_
#define ICURISK_MODELS_LOGISTIC_H_

#include <span>
#include <string_view>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

enum class Penalty { kL1, kL2 };

std::string_view PenaltyName(Penalty penalty);
Penalty ParsePenalty(std::string_view name);

struct LogisticOptions {
  Penalty penalty = Penalty::kL2;
  double c = 1.0;  // inverse regularization strength
  double tol = 1e-6;
  int max_iter = 10000;
};

// Objective at theta = [w_1..w_d, b]:
//   mean log-loss + ||w||_2^2 / (2 c n)   (L2)
//   mean log-loss + ||w||_1 / (c n)       (L1)
// Writes the gradient (a subgradient at w_j = 0 under L1) when `grad` is set.
double LogisticObjective(const Matrix& x, std::span<const int> y,
                         std::span<const double> theta, Penalty penalty, double c,
                         std::vector<double>* grad);

// Accelerated proximal gradient with backtracking. Converged when the
// gradient-mapping norm drops below tol; otherwise flagged after max_iter.
ModelArtifact FitLogistic(const Matrix& x, std::span<const int> y,
                          const LogisticOptions& options);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_LOGISTIC_H_
