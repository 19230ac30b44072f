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


#ifndef ICURISK_PREPROCESS_SERIES_H_
#define ICURISK_PREPROCESS_SERIES_H_

#include <vector>

namespace icurisk::preprocess {

struct TimePoint {
  double t = 0.0;  // hours since ICU admission
  double v = 0.0;
};

// Ordered observations; t must be non-decreasing.
struct TimeSeries {
  std::vector<TimePoint> points;
};

struct SeriesSummary {
  double min = 0.0;
  double max = 0.0;
  double slope = 0.0;      // value units per hour
  double intercept = 0.0;  // fitted value at t = 0
  double cov = 0.0;        // sample sd / |mean|
  double iqr = 0.0;
  // Fewer than two distinct times: slope reported as 0.
  bool slope_degenerate = false;
  // Mean of zero: cov reported as 0.
  bool cov_undefined = false;
};

// min, max, ordinary-least-squares trend of v on t, coefficient of variation
// and interquartile range (linear-interpolation quantiles).
SeriesSummary SummarizeSeries(const TimeSeries& series);

// Points with 0 <= t <= hours.
TimeSeries FirstHours(const TimeSeries& series, double hours = 24.0);

}  // namespace icurisk::preprocess

#endif  // ICURISK_PREPROCESS_SERIES_H_
