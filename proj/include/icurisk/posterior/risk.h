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


#ifndef ICURISK_POSTERIOR_RISK_H_
#define ICURISK_POSTERIOR_RISK_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "icurisk/models/artifact.h"
#include "icurisk/posterior/priors.h"
#include "json.hpp"

namespace icurisk::posterior {

inline constexpr int kHistogramBins = 40;

struct PosteriorSummary {
  std::size_t n_samples = 0;
  uint64_t seed = 0;
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
  std::vector<double> edges;          // kHistogramBins + 1 equal-width edges on [0, 1]
  std::vector<std::size_t> counts;    // kHistogramBins counts

  nlohmann::ordered_json ToJson() const;
};

// Summary of model risk over n profiles drawn from the priors.
PosteriorSummary PosteriorRisk(const models::ModelArtifact& model,
                               const PriorSpec& priors, std::size_t n,
                               uint64_t seed,
                               std::vector<double>* risks = nullptr);

// Summary statistics of a risk sample in [0, 1].
PosteriorSummary SummarizeRisks(std::span<const double> risks, uint64_t seed);

// CSV columns: bin_low,bin_high,count,density (density integrates to 1).
void WriteHistogramCsv(std::ostream& out, const PosteriorSummary& summary);

}  // namespace icurisk::posterior

#endif  // ICURISK_POSTERIOR_RISK_H_
