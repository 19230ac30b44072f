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


#include "icurisk/preprocess/impute.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/trees/forest.h"

namespace icurisk::preprocess {
namespace {

using dataio::Column;
using dataio::ColumnKind;
using dataio::Frame;

bool IsLabel(const Frame& frame, std::size_t index) {
  return frame.has_label() && frame.column(index).spec.name == frame.label_name();
}

double Mode(const std::vector<double>& values) {
  std::map<double, std::size_t> counts;
  for (const double v : values) ++counts[v];
  double best = values.front();
  std::size_t best_count = 0;
  for (const auto& [v, c] : counts) {
    if (c > best_count) {
      best = v;
      best_count = c;
    }
  }
  return best;
}

}  // namespace

std::vector<ColumnFill> FitMedianMode(const Frame& frame) {
  std::vector<ColumnFill> fills;
  for (std::size_t j = 0; j < frame.n_cols(); ++j) {
    if (IsLabel(frame, j)) continue;
    const Column& c = frame.column(j);
    const std::vector<double> observed = c.Observed();
    if (observed.empty()) {
      throw DataError("column '" + c.spec.name + "' has no observed values");
    }
    const double value = c.spec.is_numeric_scale() ? Median(observed) : Mode(observed);
    fills.push_back({c.spec.name, value});
  }
  return fills;
}

Frame ApplyFills(const Frame& frame, const std::vector<ColumnFill>& fills) {
  Frame out = frame;
  for (const ColumnFill& fill : fills) {
    const auto idx = frame.FindColumn(fill.column);
    if (!idx) continue;
    const Column& src = frame.column(*idx);
    if (src.CountMissing() == 0) continue;
    Column c = src;
    for (std::size_t r = 0; r < c.size(); ++r) {
      if (c.missing[r]) {
        c.values[r] = fill.value;
        c.missing[r] = 0;
      }
    }
    out = out.WithColumn(std::move(c));
  }
  return out;
}

Frame ImputeMedianMode(const Frame& frame) {
  return ApplyFills(frame, FitMedianMode(frame));
}

Frame ImputeIterativeForest(const Frame& frame,
                            const IterativeImputeOptions& options, uint64_t seed,
                            IterativeImputeTrace* trace) {
  std::vector<std::size_t> features;
  std::vector<std::size_t> incomplete;
  bool any_complete = false;
  for (std::size_t j = 0; j < frame.n_cols(); ++j) {
    if (IsLabel(frame, j)) continue;
    features.push_back(j);
    const std::size_t missing = frame.column(j).CountMissing();
    if (missing == frame.n_rows()) {
      throw DataError("column '" + frame.column(j).spec.name +
                      "' has no observed values");
    }
    if (missing == 0) {
      any_complete = true;
    } else {
      incomplete.push_back(j);
    }
  }
  if (trace) *trace = {};
  if (incomplete.empty()) return frame;
  if (!any_complete) {
    throw DataError("iterative imputation needs at least one fully observed column");
  }
  std::stable_sort(incomplete.begin(), incomplete.end(),
                   [&](std::size_t a, std::size_t b) {
                     return frame.column(a).CountMissing() <
                            frame.column(b).CountMissing();
                   });

  // Working copy of all feature values, initialized by median/mode.
  const Frame initial = ImputeMedianMode(frame);
  const std::size_t n = frame.n_rows();
  std::vector<std::vector<double>> values(frame.n_cols());
  for (const std::size_t j : features) values[j] = initial.column(j).values;

  trees::ForestOptions forest;
  forest.num_trees = options.num_trees;
  forest.max_depth = options.max_depth;
  forest.min_leaf = 1.0;
  forest.features_per_split = -1;
  forest.sampling = trees::RowSampling::kSubsample;
  forest.sample_fraction = options.sample_fraction;

  double last_change = std::numeric_limits<double>::max();
  for (int sweep = 0; sweep < options.max_iter && last_change >= options.tol; ++sweep) {
    double change_sum = 0.0;
    std::size_t change_count = 0;
    for (const std::size_t target : incomplete) {
      const Column& col = frame.column(target);
      std::vector<std::size_t> predictors;
      for (const std::size_t j : features) {
        if (j != target) predictors.push_back(j);
      }
      std::vector<std::size_t> observed_rows;
      std::vector<std::size_t> missing_rows;
      for (std::size_t r = 0; r < n; ++r) {
        (col.missing[r] ? missing_rows : observed_rows).push_back(r);
      }
      auto build = [&](const std::vector<std::size_t>& rows) {
        Matrix m(rows.size(), predictors.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          for (std::size_t k = 0; k < predictors.size(); ++k) {
            m(i, k) = values[predictors[k]][rows[i]];
          }
        }
        return m;
      };
      const Matrix x_obs = build(observed_rows);
      const Matrix x_mis = build(missing_rows);
      const uint64_t fit_seed = DeriveSeed(
          seed, "sweep" + std::to_string(sweep) + "/" + col.spec.name);

      if (col.spec.kind == ColumnKind::kContinuous) {
        std::vector<double> y(observed_rows.size());
        for (std::size_t i = 0; i < observed_rows.size(); ++i) {
          y[i] = col.values[observed_rows[i]];
        }
        const auto model = trees::RegressionForest::Fit(x_obs, y, forest, fit_seed);
        for (std::size_t i = 0; i < missing_rows.size(); ++i) {
          const double updated = model.Predict(x_mis.Row(i));
          double& cell = values[target][missing_rows[i]];
          change_sum += std::abs(updated - cell);
          ++change_count;
          cell = updated;
        }
      } else {
        std::vector<double> levels = col.Observed();
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        if (levels.size() == 1) {
          for (const std::size_t r : missing_rows) values[target][r] = levels[0];
          continue;
        }
        std::vector<int> y(observed_rows.size());
        for (std::size_t i = 0; i < observed_rows.size(); ++i) {
          y[i] = static_cast<int>(
              std::lower_bound(levels.begin(), levels.end(),
                               col.values[observed_rows[i]]) -
              levels.begin());
        }
        const auto model = trees::ClassificationForest::Fit(
            x_obs, y, static_cast<int>(levels.size()), forest, fit_seed);
        for (std::size_t i = 0; i < missing_rows.size(); ++i) {
          const std::vector<double> p = model.PredictProba(x_mis.Row(i));
          const auto best = std::max_element(p.begin(), p.end()) - p.begin();
          values[target][missing_rows[i]] = levels[static_cast<std::size_t>(best)];
        }
      }
    }
    last_change = change_count > 0 ? change_sum / static_cast<double>(change_count) : 0.0;
    if (trace) {
      ++trace->sweeps;
      trace->changes.push_back(last_change);
    }
  }

  Frame out = initial;
  for (const std::size_t j : incomplete) {
    Column c = frame.column(j);
    for (std::size_t r = 0; r < n; ++r) {
      if (c.missing[r]) {
        c.values[r] = values[j][r];
        c.missing[r] = 0;
      }
    }
    out = out.WithColumn(std::move(c));
  }
  return out;
}

}  // namespace icurisk::preprocess
