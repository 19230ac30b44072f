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


#include "icurisk/preprocess/series.h"

#include <algorithm>
#include <cmath>

#include "icurisk/common/error.h"
#include "icurisk/common/stats.h"

namespace icurisk::preprocess {

SeriesSummary SummarizeSeries(const TimeSeries& series) {
  const auto& pts = series.points;
  if (pts.empty()) throw InvalidArgumentError("cannot summarize an empty series");
  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && pts[i].t < pts[i - 1].t) {
      throw InvalidArgumentError("series times must be non-decreasing");
    }
    v[i] = pts[i].v;
  }
  SeriesSummary s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());

  double t_mean = 0.0;
  for (const TimePoint& p : pts) t_mean += p.t;
  t_mean /= static_cast<double>(pts.size());
  const double v_mean = Mean(v);
  double sxy = 0.0;
  double sxx = 0.0;
  for (const TimePoint& p : pts) {
    sxy += (p.t - t_mean) * (p.v - v_mean);
    sxx += (p.t - t_mean) * (p.t - t_mean);
  }
  if (pts.front().t == pts.back().t || sxx <= 0.0) {
    s.slope = 0.0;
    s.intercept = v_mean;
    s.slope_degenerate = true;
  } else {
    s.slope = sxy / sxx;
    s.intercept = v_mean - s.slope * t_mean;
  }

  if (v_mean == 0.0) {
    s.cov = 0.0;
    s.cov_undefined = true;
  } else {
    s.cov = SampleSd(v) / std::abs(v_mean);
  }
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  s.iqr = QuantileSorted(sorted, 0.75) - QuantileSorted(sorted, 0.25);
  return s;
}

TimeSeries FirstHours(const TimeSeries& series, double hours) {
  TimeSeries out;
  for (const TimePoint& p : series.points) {
    if (p.t >= 0.0 && p.t <= hours) out.points.push_back(p);
  }
  return out;
}

}  // namespace icurisk::preprocess
