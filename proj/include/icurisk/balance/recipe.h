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


#ifndef ICURISK_BALANCE_RECIPE_H_
#define ICURISK_BALANCE_RECIPE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "icurisk/balance/folds.h"
#include "icurisk/dataio/frame.h"
#include "icurisk/evalstats/metrics.h"
#include "icurisk/models/artifact.h"
#include "icurisk/preprocess/prepare.h"
#include "icurisk/preprocess/scaling.h"

namespace icurisk::balance {

// Rows a recipe's fit-time steps may see. Only kTrainingRows is valid inside
// cross-validation; kAllRows exists so the leakage guard can be exercised.
enum class FitScope { kTrainingRows, kAllRows };

// Fit-time steps: imputer and encoders, scaler, SMOTE, model. Transform-time
// steps replay the fitted imputer fills, encoders and scaler.
struct Recipe {
  preprocess::PreprocessOptions preprocess;
  preprocess::ScalerKind scaler = preprocess::ScalerKind::kMinMax;
  std::vector<std::string> features;
  bool smote = true;
  int smote_k = 5;
  models::Family family = models::Family::kLogistic;
  models::Json hyperparams = models::Json::object();
  FitScope fit_scope = FitScope::kTrainingRows;
};

struct FittedRecipe {
  preprocess::FittedPreprocessor preprocessor;
  models::ModelArtifact model;
  std::size_t synthetic_rows = 0;
};

// Fits every step on `train`. The model's input transform is the fitted
// scaler, so it scores raw-unit rows.
FittedRecipe FitRecipe(const dataio::Frame& train, const Recipe& recipe,
                       uint64_t seed);

// Model-stage fit on an already prepared frame (scaler, SMOTE, model).
models::ModelArtifact FitModelStage(const dataio::Frame& prepared,
                                    const Recipe& recipe, uint64_t seed,
                                    std::size_t* synthetic_rows = nullptr);

std::vector<double> PredictRecipe(const FittedRecipe& fitted,
                                  const dataio::Frame& frame);

// Per-fold preprocessing fitted on the training folds only.
struct PreparedFold {
  dataio::Frame train;     // imputed/encoded training folds
  dataio::Frame heldout;   // held-out fold with replayed transforms
  std::vector<std::size_t> fit_row_ids;
};

std::vector<PreparedFold> PrepareFolds(const dataio::Frame& frame,
                                       const FoldPlan& plan, const Recipe& recipe,
                                       uint64_t seed);

struct CvResult {
  // AUROC plus confusion metrics at threshold 0.5; no bootstrap interval
  // (ci_low = ci_high = auroc).
  std::vector<evalstats::EvalReport> folds;
  // Held-out predictions indexed by row of the input frame.
  std::vector<double> oof;
  double mean_auroc = 0.0;
};

// Fits the model stage on each prepared training fold and scores the held-out
// fold.
CvResult EvaluatePreparedFolds(const std::vector<PreparedFold>& folds,
                               const FoldPlan& plan, const Recipe& recipe,
                               uint64_t seed);

// PrepareFolds + EvaluatePreparedFolds. Throws LeakageError if any fit-time
// step saw a held-out row.
CvResult CvTrainEval(const dataio::Frame& frame, const FoldPlan& plan,
                     const Recipe& recipe, uint64_t seed);

}  // namespace icurisk::balance

#endif  // ICURISK_BALANCE_RECIPE_H_
