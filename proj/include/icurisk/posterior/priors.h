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


#ifndef ICURISK_POSTERIOR_PRIORS_H_
#define ICURISK_POSTERIOR_PRIORS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/common/random.h"
#include "icurisk/dataio/frame.h"
#include "json.hpp"

namespace icurisk::posterior {

struct PointMass {
  double value = 0.0;
};

struct TruncNormal {
  double mu = 0.0;
  double sd = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  // Round draws to integers within [ceil(lo), floor(hi)] (score features).
  bool round = false;
};

struct BernoulliPrior {
  double p = 0.5;
};

struct Empirical {
  std::vector<double> values;
};

using Prior = std::variant<PointMass, TruncNormal, BernoulliPrior, Empirical>;

// Throws InvalidArgumentError unless the prior is well formed and, for a
// truncated normal, its interval carries at least 1e-12 probability.
void ValidatePrior(const std::string& feature, const Prior& prior);

double SamplePrior(const Prior& prior, SplitMixRng& rng);

// Feature -> prior, in insertion order. JSON form:
//   {"<feature>": {"type": "point_mass", "value": v}
//              | {"type": "trunc_normal", "mu", "sd", "lo", "hi", "round"?}
//              | {"type": "bernoulli", "p": p}
//              | {"type": "empirical", "values": [...]}, ...}
class PriorSpec {
 public:
  void Set(const std::string& feature, Prior prior);
  const Prior* Find(const std::string& feature) const;
  const std::vector<std::pair<std::string, Prior>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

  nlohmann::ordered_json ToJson() const;
  // Throws InvalidArgumentError on malformed documents.
  static PriorSpec FromJson(const nlohmann::ordered_json& j);
  static PriorSpec Load(const std::string& path);
  void Save(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, Prior>> entries_;
};

// Priors from the label = 1 rows of `frame` for `features` (all non-label
// columns when empty): continuous/score columns get TruncNormal(mean, sample
// sd, observed min, observed max), rounded for scores; binary columns get
// Bernoulli(mean); categorical columns get the empirical values. Columns with
// a single observed value become point masses.
PriorSpec NonsurvivorPriors(const dataio::Frame& frame,
                            std::span<const std::string> features = {});

// n rows ordered as `features`. Row i draws from its own generator seeded by
// (seed, i), so results do not depend on evaluation order.
Matrix SampleProfiles(const PriorSpec& priors,
                      std::span<const std::string> features, std::size_t n,
                      uint64_t seed);

}  // namespace icurisk::posterior

#endif  // ICURISK_POSTERIOR_PRIORS_H_
