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


#ifndef ICURISK_INTERPRET_ALE_H_
#define ICURISK_INTERPRET_ALE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icurisk/dataio/frame.h"
#include "icurisk/models/artifact.h"
#include "json.hpp"

namespace icurisk::interpret {

struct AleCurve {
  std::string feature;
  std::vector<double> edges;
  // Centered accumulated effect at each edge, in probability units.
  std::vector<double> ale;
  // Rows per bin; bin b spans (edges[b], edges[b+1]], the first bin also
  // holds rows equal to edges[0].
  std::vector<std::size_t> bin_counts;

  std::size_t num_rows() const;
  // Piecewise-linear curve value, flat beyond the outer edges.
  double Interpolate(double x) const;

  nlohmann::ordered_json ToJson() const;
  static AleCurve FromJson(const nlohmann::ordered_json& j);
};

struct AleOptions {
  int n_bins = 20;
  // Evaluate on a seeded subsample of at most this many rows (0 = all rows).
  std::size_t max_rows = 0;
};

// First-order accumulated local effects of `feature` on the model's risk.
// Continuous features use equal-mass quantile edges with duplicates merged;
// score features use their observed integer levels. The curve is centered so
// its mean over the evaluated rows is zero.
AleCurve AleFirstOrder(const models::ModelArtifact& model,
                       const dataio::Frame& frame, const std::string& feature,
                       const AleOptions& options, uint64_t seed);

// CSV columns: edge,ale,count where count is the size of the bin ending at
// the edge (0 on the first edge).
void WriteAleCsv(std::ostream& out, const AleCurve& curve);
AleCurve ReadAleCsv(std::istream& in, const std::string& feature);

}  // namespace icurisk::interpret

#endif  // ICURISK_INTERPRET_ALE_H_
