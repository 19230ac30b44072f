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


#include "icurisk/posterior/risk.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "icurisk/common/error.h"
#include "icurisk/common/stats.h"
#include "icurisk/dataio/csv.h"

namespace icurisk::posterior {

nlohmann::ordered_json PosteriorSummary::ToJson() const {
  nlohmann::ordered_json j;
  j["n_samples"] = n_samples;
  j["seed"] = seed;
  j["mean"] = mean;
  j["sd"] = sd;
  j["median"] = median;
  j["q025"] = q025;
  j["q975"] = q975;
  j["histogram"] = {{"edges", edges}, {"counts", counts}};
  return j;
}

PosteriorSummary SummarizeRisks(std::span<const double> risks, uint64_t seed) {
  if (risks.empty()) throw InvalidArgumentError("no risks to summarize");
  PosteriorSummary s;
  s.n_samples = risks.size();
  s.seed = seed;
  const double n = static_cast<double>(risks.size());
  // Offsets from the first draw so identical draws summarize exactly.
  const double origin = risks[0];
  double shift = 0.0;
  for (const double r : risks) shift += r - origin;
  s.mean = origin + shift / n;
  double ss = 0.0;
  for (const double r : risks) ss += (r - s.mean) * (r - s.mean);
  s.sd = risks.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::vector<double> sorted(risks.begin(), risks.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = QuantileSorted(sorted, 0.5);
  s.q025 = QuantileSorted(sorted, 0.025);
  s.q975 = QuantileSorted(sorted, 0.975);
  s.edges.resize(kHistogramBins + 1);
  for (int b = 0; b <= kHistogramBins; ++b) {
    s.edges[b] = static_cast<double>(b) / kHistogramBins;
  }
  s.counts.assign(kHistogramBins, 0);
  for (const double r : risks) {
    if (!(r >= 0.0 && r <= 1.0)) throw DataError("risk outside [0, 1]");
    const int b = std::min(kHistogramBins - 1, static_cast<int>(r * kHistogramBins));
    s.counts[b]++;
  }
  return s;
}

PosteriorSummary PosteriorRisk(const models::ModelArtifact& model,
                               const PriorSpec& priors, std::size_t n,
                               uint64_t seed, std::vector<double>* risks) {
  const Matrix profiles = SampleProfiles(priors, model.feature_order, n, seed);
  std::vector<double> r = models::PredictProba(model, profiles);
  PosteriorSummary s = SummarizeRisks(r, seed);
  if (risks) *risks = std::move(r);
  return s;
}

void WriteHistogramCsv(std::ostream& out, const PosteriorSummary& summary) {
  out << "bin_low,bin_high,count,density\n";
  const double n = static_cast<double>(summary.n_samples);
  for (std::size_t b = 0; b < summary.counts.size(); ++b) {
    const double width = summary.edges[b + 1] - summary.edges[b];
    out << dataio::FormatDouble(summary.edges[b]) << ','
        << dataio::FormatDouble(summary.edges[b + 1]) << ',' << summary.counts[b]
        << ',' << dataio::FormatDouble(static_cast<double>(summary.counts[b]) / (n * width))
        << '\n';
  }
}

}  // namespace icurisk::posterior
