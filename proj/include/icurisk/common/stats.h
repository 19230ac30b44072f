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


#ifndef ICURISK_COMMON_STATS_H_
#define ICURISK_COMMON_STATS_H_

#include <span>
#include <vector>

namespace icurisk {

double Mean(std::span<const double> values);
// Unbiased (n - 1) variance; 0 for fewer than two values.
double SampleVariance(std::span<const double> values);
double SampleSd(std::span<const double> values);

// Quantile with linear interpolation between order statistics: position
// h = (n - 1) * p on the sorted sample. `sorted` must be ascending and
// non-empty.
double QuantileSorted(std::span<const double> sorted, double p);
double Quantile(std::span<const double> values, double p);
double Median(std::span<const double> values);

double Sigmoid(double z);
// log(1 + exp(z)) without overflow.
double Softplus(double z);

double NormalCdf(double z);
// Inverse of the standard normal CDF, accurate to ~1e-15 on (0, 1).
double NormalQuantile(double p);

}  // namespace icurisk

#endif  // ICURISK_COMMON_STATS_H_
