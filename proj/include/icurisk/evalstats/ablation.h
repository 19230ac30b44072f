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


#ifndef ICURISK_EVALSTATS_ABLATION_H_
#define ICURISK_EVALSTATS_ABLATION_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icurisk/balance/recipe.h"
#include "icurisk/dataio/frame.h"

namespace icurisk::evalstats {

struct AblationEntry {
  std::string feature;
  double auroc_without = 0.0;
  double delta = 0.0;  // baseline_auroc - auroc_without
};

struct AblationReport {
  double baseline_auroc = 0.0;
  // Descending delta, ties by feature name.
  std::vector<AblationEntry> entries;
};

// Test-split AUROC of the recipe with all of recipe.features, then with each
// feature removed in turn. Hyperparameters and seeds stay fixed across refits.
AblationReport Ablation(const dataio::Frame& train, const dataio::Frame& test,
                        const balance::Recipe& recipe, uint64_t seed);

// CSV columns: feature,auroc_without,delta,baseline_auroc.
void WriteAblationCsv(std::ostream& out, const AblationReport& report);

}  // namespace icurisk::evalstats

#endif  // ICURISK_EVALSTATS_ABLATION_H_
