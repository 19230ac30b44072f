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


#include "icurisk/preprocess/prepare.h"

#include "icurisk/common/error.h"

namespace icurisk::preprocess {
namespace {

dataio::Frame Encode(const dataio::Frame& frame,
                     const std::vector<TargetEncoder>& encoders) {
  dataio::Frame out = frame;
  for (const TargetEncoder& enc : encoders) {
    if (!frame.FindColumn(enc.column())) continue;
    out = out.WithColumn(enc.Transform(frame.column(enc.column())));
  }
  return out;
}

}  // namespace

std::string_view ImputerKindName(ImputerKind kind) {
  return kind == ImputerKind::kMedianMode ? "median_mode" : "iterative_forest";
}

ImputerKind ParseImputerKind(std::string_view name) {
  if (name == "median_mode") return ImputerKind::kMedianMode;
  if (name == "iterative_forest") return ImputerKind::kIterativeForest;
  throw ConfigError("unknown imputer '" + std::string(name) + "'");
}

FittedPreprocessor FittedPreprocessor::Fit(const dataio::Frame& train,
                                           const PreprocessOptions& options,
                                           uint64_t seed) {
  if (!train.has_label()) throw DataError("preprocessor needs a labeled frame");
  FittedPreprocessor p;
  p.options_ = options;
  p.fit_row_ids_.assign(train.row_ids().begin(), train.row_ids().end());
  p.fills_ = FitMedianMode(train);

  const std::vector<int> labels = train.Labels();
  std::vector<std::size_t> all_rows(train.n_rows());
  for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
  for (const dataio::Column& c : train.columns()) {
    if (c.spec.kind != dataio::ColumnKind::kCategorical) continue;
    p.encoders_.push_back(
        TargetEncoder::Fit(c, labels, all_rows, options.target_smoothing));
  }

  dataio::Frame imputed;
  if (options.imputer == ImputerKind::kIterativeForest) {
    // Categoricals are encoded first and keep their missing cells.
    dataio::Frame encoded = train;
    for (const TargetEncoder& enc : p.encoders_) {
      dataio::Column col = enc.Transform(train.column(enc.column()));
      col.missing = train.column(enc.column()).missing;
      encoded = encoded.WithColumn(std::move(col));
    }
    imputed = ImputeIterativeForest(encoded, options.iterative, seed, &p.trace_);
  } else {
    imputed = Encode(ApplyFills(train, p.fills_), p.encoders_);
  }
  p.prepared_train_ = std::move(imputed);
  return p;
}

dataio::Frame FittedPreprocessor::Prepare(const dataio::Frame& frame) const {
  return Encode(ApplyFills(frame, fills_), encoders_);
}

nlohmann::ordered_json FittedPreprocessor::ToJson() const {
  nlohmann::ordered_json j;
  j["imputer"] = std::string(ImputerKindName(options_.imputer));
  if (options_.imputer == ImputerKind::kIterativeForest) {
    j["iterative"] = {{"max_iter", options_.iterative.max_iter},
                      {"tol", options_.iterative.tol},
                      {"num_trees", options_.iterative.num_trees},
                      {"max_depth", options_.iterative.max_depth},
                      {"sample_fraction", options_.iterative.sample_fraction},
                      {"sweeps", trace_.sweeps}};
  }
  nlohmann::ordered_json fills = nlohmann::ordered_json::object();
  for (const ColumnFill& f : fills_) fills[f.column] = f.value;
  j["fills"] = std::move(fills);
  nlohmann::ordered_json encoders = nlohmann::ordered_json::array();
  for (const TargetEncoder& e : encoders_) encoders.push_back(e.ToJson());
  j["target_encoders"] = std::move(encoders);
  return j;
}

}  // namespace icurisk::preprocess
