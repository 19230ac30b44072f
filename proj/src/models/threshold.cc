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


#include "icurisk/models/threshold.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "icurisk/common/error.h"

namespace icurisk::models {

double ChooseThreshold(std::span<const double> probs, std::span<const int> y,
                       double min_sensitivity) {
  if (probs.size() != y.size()) {
    throw InvalidArgumentError("threshold: score and label lengths differ");
  }
  if (!(min_sensitivity > 0.0 && min_sensitivity <= 1.0)) {
    throw InvalidArgumentError("threshold: min_sensitivity must be in (0, 1]");
  }
  std::vector<double> positives;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 1) positives.push_back(probs[i]);
  }
  if (positives.empty()) throw DataError("threshold: no positive examples");
  // Sensitivity at t is the share of positive scores >= t, so the best t is
  // the largest observed score not above the k-th largest positive score,
  // where k is the fewest positives meeting the floor.
  std::sort(positives.begin(), positives.end(), std::greater<>());
  const double p = static_cast<double>(positives.size());
  auto needed = static_cast<std::size_t>(std::ceil(min_sensitivity * p - 1e-9));
  needed = std::clamp<std::size_t>(needed, 1, positives.size());
  const double bound = positives[needed - 1];
  double best = 0.0;
  for (const double s : probs) {
    if (s <= bound && s > best) best = s;
  }
  return best;
}

}  // namespace icurisk::models
