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


#ifndef ICURISK_DATAIO_SYNTHETIC_H_
#define ICURISK_DATAIO_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icurisk/dataio/frame.h"
#include "json.hpp"

namespace icurisk::dataio {

struct StratumMoments {
  double mean = 0.0;
  double sd = 0.0;
};

struct FeatureStats {
  ColumnSpec spec;
  StratumMoments survivor;
  StratumMoments nonsurvivor;
  // Explicit clamp range; when absent, score columns use their declared
  // range and continuous columns use mean +/- 4 sd over both strata.
  std::optional<std::pair<double, double>> bounds;
};

// Per-stratum marginal statistics that parameterize the cohort generator.
struct StratumStats {
  double prevalence = 0.0;
  std::string label = "died_28d";
  std::vector<FeatureStats> features;
};

void Validate(const StratumStats& stats);
std::pair<double, double> ClampBounds(const FeatureStats& feature);

// Draws labels Bernoulli(prevalence), then each feature independently from
// the row's stratum: normal clamped to bounds (rounded for score columns) or
// Bernoulli(mean) for binary columns.
Frame GenerateSyntheticCohort(const StratumStats& stats, std::size_t n,
                              uint64_t seed);

// Survivor / non-survivor means and SDs of the nineteen-feature elderly
// diabetes + heart failure ICU cohort, prevalence 0.196.
StratumStats DefaultIcuCohortStats();

nlohmann::ordered_json StratumStatsToJson(const StratumStats& stats);
StratumStats StratumStatsFromJson(const nlohmann::ordered_json& doc);
StratumStats LoadStratumStats(const std::filesystem::path& path);

}  // namespace icurisk::dataio

#endif  // ICURISK_DATAIO_SYNTHETIC_H_
