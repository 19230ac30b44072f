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


#include "icurisk/balance/recipe.h"

#include <algorithm>
#include <set>

#include "icurisk/balance/smote.h"
#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/models/fit.h"

namespace icurisk::balance {
namespace {

std::vector<bool> BinaryMask(const dataio::Frame& frame,
                             const std::vector<std::string>& features) {
  std::vector<bool> mask;
  for (const std::string& name : features) {
    mask.push_back(frame.column(name).spec.kind == dataio::ColumnKind::kBinary);
  }
  return mask;
}

void CheckFeatures(const Recipe& recipe) {
  if (recipe.features.empty()) throw ConfigError("recipe has no features");
}

}  // namespace

models::ModelArtifact FitModelStage(const dataio::Frame& prepared,
                                    const Recipe& recipe, uint64_t seed,
                                    std::size_t* synthetic_rows) {
  CheckFeatures(recipe);
  const Matrix raw = prepared.ToMatrix(recipe.features);
  const std::vector<int> labels = prepared.Labels();
  const preprocess::AffineTransform transform =
      preprocess::FitScaler(prepared, recipe.features, recipe.scaler);
  Matrix x = transform.Apply(raw);
  std::vector<int> y = labels;
  std::size_t synthetic = 0;
  if (recipe.smote) {
    const std::vector<bool> mask = BinaryMask(prepared, recipe.features);
    BalancedData balanced =
        BalanceWithSmote(x, labels, recipe.smote_k, DeriveSeed(seed, "smote"), mask);
    x = std::move(balanced.x);
    y = std::move(balanced.y);
    synthetic = balanced.synthetic_rows;
  }
  models::ModelArtifact model = models::FitFamily(
      recipe.family, x, y, recipe.hyperparams, DeriveSeed(seed, "model"));
  model.feature_order = recipe.features;
  if (recipe.scaler != preprocess::ScalerKind::kNone) model.input_transform = transform;
  models::AttachFeatureInfo(model, prepared);
  if (synthetic_rows) *synthetic_rows = synthetic;
  return model;
}

FittedRecipe FitRecipe(const dataio::Frame& train, const Recipe& recipe,
                       uint64_t seed) {
  CheckFeatures(recipe);
  FittedRecipe fitted;
  fitted.preprocessor = preprocess::FittedPreprocessor::Fit(
      train, recipe.preprocess, DeriveSeed(seed, "preprocess"));
  fitted.model = FitModelStage(fitted.preprocessor.prepared_train(), recipe, seed,
                               &fitted.synthetic_rows);
  return fitted;
}

std::vector<double> PredictRecipe(const FittedRecipe& fitted,
                                  const dataio::Frame& frame) {
  return models::PredictProba(fitted.model, fitted.preprocessor.Prepare(frame));
}

std::vector<PreparedFold> PrepareFolds(const dataio::Frame& frame,
                                       const FoldPlan& plan, const Recipe& recipe,
                                       uint64_t seed) {
  if (plan.num_rows() != frame.n_rows()) {
    throw InvalidArgumentError("fold plan does not cover the frame");
  }
  std::vector<PreparedFold> out;
  for (int f = 0; f < plan.k; ++f) {
    const std::vector<std::size_t> train_rows = plan.TrainingRows(f);
    const dataio::Frame heldout = frame.SelectRows(plan.folds[f]);
    const dataio::Frame fit_frame = recipe.fit_scope == FitScope::kAllRows
                                        ? frame
                                        : frame.SelectRows(train_rows);
    const auto pre = preprocess::FittedPreprocessor::Fit(
        fit_frame, recipe.preprocess,
        DeriveSeed(seed, "fold" + std::to_string(f) + "/preprocess"));

    const std::set<std::size_t> fit_ids(pre.fit_row_ids().begin(),
                                        pre.fit_row_ids().end());
    for (const std::size_t id : heldout.row_ids()) {
      if (fit_ids.count(id)) {
        throw LeakageError("fold " + std::to_string(f) +
                           ": fit-time step saw held-out row " + std::to_string(id));
      }
    }
    out.push_back({pre.prepared_train(), pre.Prepare(heldout), pre.fit_row_ids()});
  }
  return out;
}

CvResult EvaluatePreparedFolds(const std::vector<PreparedFold>& folds,
                               const FoldPlan& plan, const Recipe& recipe,
                               uint64_t seed) {
  CvResult result;
  result.oof.assign(plan.num_rows(), 0.0);
  double sum = 0.0;
  for (int f = 0; f < plan.k; ++f) {
    const PreparedFold& fold = folds[f];
    const models::ModelArtifact model =
        FitModelStage(fold.train, recipe, DeriveSeed(seed, static_cast<uint64_t>(f)));
    const std::vector<double> probs = models::PredictProba(model, fold.heldout);
    const std::vector<int> labels = fold.heldout.Labels();
    evalstats::EvalReport report = evalstats::ConfusionMetrics(probs, labels, 0.5);
    report.auroc = evalstats::Auroc(probs, labels);
    report.ci_low = report.ci_high = report.auroc;
    sum += report.auroc;
    result.folds.push_back(std::move(report));
    for (std::size_t i = 0; i < plan.folds[f].size(); ++i) {
      result.oof[plan.folds[f][i]] = probs[i];
    }
  }
  result.mean_auroc = sum / static_cast<double>(plan.k);
  return result;
}

CvResult CvTrainEval(const dataio::Frame& frame, const FoldPlan& plan,
                     const Recipe& recipe, uint64_t seed) {
  return EvaluatePreparedFolds(PrepareFolds(frame, plan, recipe, seed), plan,
                               recipe, seed);
}

}  // namespace icurisk::balance
