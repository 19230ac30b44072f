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


#ifndef ICURISK_MODELS_THRESHOLD_H_
#define ICURISK_MODELS_THRESHOLD_H_

#include <span>

namespace icurisk::models {

// Largest candidate threshold t (observed scores and 0) whose sensitivity,
// predicting positive iff score >= t, is at least min_sensitivity.
double ChooseThreshold(std::span<const double> probs, std::span<const int> y,
                       double min_sensitivity);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_THRESHOLD_H_
