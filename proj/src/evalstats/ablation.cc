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


#include "icurisk/evalstats/ablation.h"

#include <algorithm>
#include <ostream>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/evalstats/metrics.h"

namespace icurisk::evalstats {

AblationReport Ablation(const dataio::Frame& train, const dataio::Frame& test,
                        const balance::Recipe& recipe, uint64_t seed) {
  if (recipe.features.size() < 2) {
    throw InvalidArgumentError("ablation needs at least 2 features");
  }
  const auto pre = preprocess::FittedPreprocessor::Fit(
      train, recipe.preprocess, DeriveSeed(seed, "preprocess"));
  const dataio::Frame prepared_test = pre.Prepare(test);
  const std::vector<int> labels = prepared_test.Labels();
  auto score = [&](const balance::Recipe& r) {
    const auto model = balance::FitModelStage(pre.prepared_train(), r, seed);
    return Auroc(models::PredictProba(model, prepared_test), labels);
  };

  AblationReport report;
  report.baseline_auroc = score(recipe);
  for (const std::string& feature : recipe.features) {
    balance::Recipe reduced = recipe;
    reduced.features.erase(
        std::find(reduced.features.begin(), reduced.features.end(), feature));
    const double without = score(reduced);
    report.entries.push_back({feature, without, report.baseline_auroc - without});
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const AblationEntry& a, const AblationEntry& b) {
              if (a.delta != b.delta) return a.delta > b.delta;
              return a.feature < b.feature;
            });
  return report;
}

void WriteAblationCsv(std::ostream& out, const AblationReport& report) {
  out << "feature,auroc_without,delta,baseline_auroc\n";
  for (const AblationEntry& e : report.entries) {
    out << dataio::CsvEscape(e.feature) << ',' << dataio::FormatDouble(e.auroc_without)
        << ',' << dataio::FormatDouble(e.delta) << ','
        << dataio::FormatDouble(report.baseline_auroc) << '\n';
  }
}

}  // namespace icurisk::evalstats
