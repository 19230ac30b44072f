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


#ifndef ICURISK_PIPELINE_CONFIG_H_
#define ICURISK_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "icurisk/models/artifact.h"
#include "icurisk/models/fit.h"
#include "icurisk/preprocess/prepare.h"
#include "icurisk/preprocess/scaling.h"

namespace icurisk::pipeline {

using models::Json;

enum class InputKind { kSynthetic, kCsv };

struct InputConfig {
  InputKind kind = InputKind::kSynthetic;
  // Synthetic: stratum statistics file; empty selects the built-in ICU
  // cohort statistics.
  std::filesystem::path stats;
  std::size_t n = 1478;
  // MCAR fraction of feature cells blanked after generation.
  double missing_fraction = 0.0;
  // CSV input.
  std::filesystem::path csv;
  std::filesystem::path schema;
  std::string missing_token;
};

struct SelectionConfig {
  std::size_t k1 = 30;
  std::size_t k2 = 19;
  // Non-empty: selection is skipped and these features are used verbatim.
  std::vector<std::string> features;
  int gini_trees = 200;
};

enum class SmotePlacement { kFoldsAndFinal, kFoldsOnly, kNone };

std::string_view SmotePlacementName(SmotePlacement placement);
SmotePlacement ParseSmotePlacement(std::string_view name);

enum class ThresholdSource { kTest, kOof };

struct ThresholdConfig {
  double floor = 0.8;
  ThresholdSource source = ThresholdSource::kTest;
};

struct AleConfig {
  int n_bins = 20;
  std::size_t max_rows = 0;
  // Empty: every selected continuous or score feature.
  std::vector<std::string> features;
};

struct PosteriorConfig {
  models::Family family = models::Family::kGbdt;
  std::size_t samples = 20000;
};

struct RunConfig {
  InputConfig input;
  uint64_t seed = 2024;
  preprocess::PreprocessOptions preprocess;
  preprocess::ScalerKind scaler = preprocess::ScalerKind::kMinMax;
  SelectionConfig selection;
  SmotePlacement smote = SmotePlacement::kFoldsAndFinal;
  int smote_k = 5;
  int cv_folds = 5;
  double test_fraction = 0.3;
  std::vector<models::HyperGrid> grids;  // one per family, run in this order
  ThresholdConfig threshold;
  int bootstrap = 2000;
  double alpha = 0.05;
  models::Family ablation_family = models::Family::kLogistic;
  AleConfig ale;
  PosteriorConfig posterior;
  std::filesystem::path output_dir = "runs/default";

  const models::HyperGrid* FindGrid(models::Family family) const;

  Json ToJson() const;
  // Relative input paths resolve against `base_dir`. Unknown keys and
  // invalid values raise ConfigError.
  static RunConfig FromJson(const Json& doc,
                            const std::filesystem::path& base_dir = {});
};

RunConfig DefaultRunConfig();

// Reads a config file, applying `key.path=value` overrides first. Values
// parse as JSON when possible and as strings otherwise.
RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides = {});
void ApplyOverride(Json& doc, std::string_view assignment);

}  // namespace icurisk::pipeline

#endif  // ICURISK_PIPELINE_CONFIG_H_
