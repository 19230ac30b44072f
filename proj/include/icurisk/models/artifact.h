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


#ifndef ICURISK_MODELS_ARTIFACT_H_
#define ICURISK_MODELS_ARTIFACT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/dataio/frame.h"
#include "icurisk/preprocess/scaling.h"
#include "icurisk/trees/tree.h"
#include "json.hpp"

namespace icurisk::models {

using Json = nlohmann::ordered_json;

enum class Family { kLogistic, kGnb, kForest, kGbdt, kMlp };

std::string_view FamilyName(Family family);
Family ParseFamily(std::string_view name);
const std::vector<Family>& AllFamilies();

struct LogisticParams {
  std::vector<double> weights;
  double intercept = 0.0;
};

struct GnbParams {
  double prior[2] = {0.5, 0.5};
  std::vector<double> mean[2];
  std::vector<double> variance[2];
};

struct ForestParams {
  // Trees hold two-class leaf frequencies.
  std::vector<trees::Tree> trees;
};

struct GbdtParams {
  double base_score = 0.0;  // log-odds
  // Leaf values already include the learning rate.
  std::vector<trees::Tree> trees;
};

struct MlpParams {
  std::size_t hidden = 0;
  std::vector<double> w1;  // hidden x inputs, row-major
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};

using ModelParams =
    std::variant<LogisticParams, GnbParams, ForestParams, GbdtParams, MlpParams>;

// Valid input range of one model feature as seen in training (raw units).
struct FeatureInfo {
  std::string name;
  dataio::ColumnKind kind = dataio::ColumnKind::kContinuous;
  std::string unit;
  double min = 0.0;
  double max = 0.0;
};

struct ModelMeta {
  uint64_t seed = 0;
  Json hyperparams = Json::object();
  std::string train_fingerprint;
  std::size_t train_rows = 0;
  bool converged = true;
  // Training loss became non-finite.
  bool diverged = false;
  int iterations = 0;
  // Single-class training labels; the model predicts the class rate.
  bool degenerate = false;
  std::vector<FeatureInfo> feature_info;
};

struct ModelArtifact {
  Family family = Family::kLogistic;
  ModelParams params;
  std::vector<std::string> feature_order;
  double threshold = 0.5;
  // Applied to raw feature rows before the family-specific scorer.
  preprocess::AffineTransform input_transform;
  ModelMeta meta;

  std::size_t num_features() const { return feature_order.size(); }
};

inline constexpr int kArtifactFormatVersion = 1;

// Risk for one raw-unit row ordered as feature_order.
double PredictOne(const ModelArtifact& model, std::span<const double> row);
std::vector<double> PredictProba(const ModelArtifact& model, const Matrix& x);
// Selects feature_order columns by name; throws NotFoundError if absent.
std::vector<double> PredictProba(const ModelArtifact& model,
                                 const dataio::Frame& frame);

// Throws unless x is non-empty, finite and matches y, with y in {0, 1}.
void CheckTrainingInputs(const Matrix& x, std::span<const int> y);
bool IsSingleClass(std::span<const int> y);

// Placeholder names x0..x{n-1} given to models fitted on bare matrices.
std::vector<std::string> DefaultFeatureNames(std::size_t n);

// Stable hex digest of a training matrix and labels.
std::string Fingerprint(const Matrix& x, std::span<const int> labels);

// Fills feature_info ranges and kinds from the training frame.
void AttachFeatureInfo(ModelArtifact& model, const dataio::Frame& train);

Json TreeToJson(const trees::Tree& tree);
trees::Tree TreeFromJson(const Json& j);

Json ArtifactToJson(const ModelArtifact& model);
// Throws DataError on a format_version mismatch or malformed document.
ModelArtifact ArtifactFromJson(const Json& j);
void SaveArtifact(const ModelArtifact& model, const std::string& path);
ModelArtifact LoadArtifact(const std::string& path);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_ARTIFACT_H_
