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


#include "icurisk/models/artifact.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"

namespace icurisk::models {
namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double ScoreLogistic(const LogisticParams& p, std::span<const double> x) {
  double z = p.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) z += p.weights[j] * x[j];
  return Sigmoid(z);
}

double ScoreGnb(const GnbParams& p, std::span<const double> x) {
  double log_joint[2];
  for (int c = 0; c < 2; ++c) {
    double l = std::log(p.prior[c]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double v = p.variance[c][j];
      const double d = x[j] - p.mean[c][j];
      l -= 0.5 * (kLog2Pi + std::log(v)) + d * d / (2.0 * v);
    }
    log_joint[c] = l;
  }
  return Sigmoid(log_joint[1] - log_joint[0]);
}

double ScoreForest(const ForestParams& p, std::span<const double> x) {
  if (p.trees.empty()) return 0.0;
  double sum = 0.0;
  for (const trees::Tree& tree : p.trees) sum += tree.Predict(x)[1];
  return sum / static_cast<double>(p.trees.size());
}

double ScoreGbdt(const GbdtParams& p, std::span<const double> x) {
  double z = p.base_score;
  for (const trees::Tree& tree : p.trees) z += tree.Predict(x)[0];
  return Sigmoid(z);
}

double ScoreMlp(const MlpParams& p, std::span<const double> x) {
  const std::size_t d = x.size();
  double z = p.b2;
  for (std::size_t h = 0; h < p.hidden; ++h) {
    double a = p.b1[h];
    const double* w = p.w1.data() + h * d;
    for (std::size_t j = 0; j < d; ++j) a += w[j] * x[j];
    if (a > 0.0) z += p.w2[h] * a;
  }
  return Sigmoid(z);
}

std::size_t ParamWidth(const ModelArtifact& m) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticParams>) {
          return p.weights.size();
        } else if constexpr (std::is_same_v<T, GnbParams>) {
          return p.mean[0].size();
        } else if constexpr (std::is_same_v<T, MlpParams>) {
          return p.hidden == 0 ? 0 : p.w1.size() / p.hidden;
        } else {
          return static_cast<std::size_t>(-1);  // trees carry no fixed width
        }
      },
      m.params);
}

Json ParamsToJson(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        Json j;
        if constexpr (std::is_same_v<T, LogisticParams>) {
          j["weights"] = p.weights;
          j["intercept"] = p.intercept;
        } else if constexpr (std::is_same_v<T, GnbParams>) {
          j["prior"] = {p.prior[0], p.prior[1]};
          j["mean"] = {p.mean[0], p.mean[1]};
          j["variance"] = {p.variance[0], p.variance[1]};
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          j["trees"] = Json::array();
          for (const auto& t : p.trees) j["trees"].push_back(TreeToJson(t));
        } else if constexpr (std::is_same_v<T, GbdtParams>) {
          j["base_score"] = p.base_score;
          j["trees"] = Json::array();
          for (const auto& t : p.trees) j["trees"].push_back(TreeToJson(t));
        } else {
          j["hidden"] = p.hidden;
          j["w1"] = p.w1;
          j["b1"] = p.b1;
          j["w2"] = p.w2;
          j["b2"] = p.b2;
        }
        return j;
      },
      params);
}

std::vector<trees::Tree> TreesFromJson(const Json& j) {
  std::vector<trees::Tree> out;
  for (const Json& t : j.at("trees")) out.push_back(TreeFromJson(t));
  return out;
}

ModelParams ParamsFromJson(Family family, const Json& j) {
  switch (family) {
    case Family::kLogistic: {
      LogisticParams p;
      p.weights = j.at("weights").get<std::vector<double>>();
      p.intercept = j.at("intercept").get<double>();
      return p;
    }
    case Family::kGnb: {
      GnbParams p;
      for (int c = 0; c < 2; ++c) {
        p.prior[c] = j.at("prior").at(c).get<double>();
        p.mean[c] = j.at("mean").at(c).get<std::vector<double>>();
        p.variance[c] = j.at("variance").at(c).get<std::vector<double>>();
      }
      return p;
    }
    case Family::kForest:
      return ForestParams{TreesFromJson(j)};
    case Family::kGbdt: {
      GbdtParams p;
      p.base_score = j.at("base_score").get<double>();
      p.trees = TreesFromJson(j);
      return p;
    }
    case Family::kMlp: {
      MlpParams p;
      p.hidden = j.at("hidden").get<std::size_t>();
      p.w1 = j.at("w1").get<std::vector<double>>();
      p.b1 = j.at("b1").get<std::vector<double>>();
      p.w2 = j.at("w2").get<std::vector<double>>();
      p.b2 = j.at("b2").get<double>();
      return p;
    }
  }
  throw DataError("unknown family");
}

}  // namespace

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kLogistic:
      return "logistic";
    case Family::kGnb:
      return "gnb";
    case Family::kForest:
      return "forest";
    case Family::kGbdt:
      return "gbdt";
    case Family::kMlp:
      return "mlp";
  }
  return "logistic";
}

Family ParseFamily(std::string_view name) {
  for (const Family f : AllFamilies()) {
    if (FamilyName(f) == name) return f;
  }
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

const std::vector<Family>& AllFamilies() {
  static const std::vector<Family> kAll = {Family::kLogistic, Family::kGnb,
                                           Family::kForest, Family::kGbdt,
                                           Family::kMlp};
  return kAll;
}

double PredictOne(const ModelArtifact& model, std::span<const double> row) {
  if (row.size() != model.feature_order.size()) {
    throw InvalidArgumentError("expected " +
                               std::to_string(model.feature_order.size()) +
                               " features, got " + std::to_string(row.size()));
  }
  std::vector<double> x(row.begin(), row.end());
  model.input_transform.ApplyInPlace(x);
  return std::visit(
      [&x](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticParams>) {
          return ScoreLogistic(p, x);
        } else if constexpr (std::is_same_v<T, GnbParams>) {
          return ScoreGnb(p, x);
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          return ScoreForest(p, x);
        } else if constexpr (std::is_same_v<T, GbdtParams>) {
          return ScoreGbdt(p, x);
        } else {
          return ScoreMlp(p, x);
        }
      },
      model.params);
}

std::vector<double> PredictProba(const ModelArtifact& model, const Matrix& x) {
  if (x.cols() != model.feature_order.size()) {
    throw InvalidArgumentError("expected " +
                               std::to_string(model.feature_order.size()) +
                               " feature columns, got " + std::to_string(x.cols()));
  }
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = PredictOne(model, x.Row(r));
  return out;
}

std::vector<double> PredictProba(const ModelArtifact& model,
                                 const dataio::Frame& frame) {
  for (const std::string& name : model.feature_order) {
    if (!frame.FindColumn(name)) {
      throw NotFoundError("frame lacks model feature '" + name + "'");
    }
  }
  return PredictProba(model, frame.ToMatrix(model.feature_order));
}

void CheckTrainingInputs(const Matrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) {
    throw InvalidArgumentError("label count does not match rows");
  }
  if (x.rows() == 0 || x.cols() == 0) {
    throw InvalidArgumentError("empty training set");
  }
  for (const double v : x.data()) {
    if (!std::isfinite(v)) throw DataError("training matrix has non-finite cells");
  }
  for (const int label : y) {
    if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
  }
}

bool IsSingleClass(std::span<const int> y) {
  for (const int label : y) {
    if (label != y.front()) return false;
  }
  return true;
}

std::vector<std::string> DefaultFeatureNames(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t j = 0; j < n; ++j) names[j] = "x" + std::to_string(j);
  return names;
}

std::string Fingerprint(const Matrix& x, std::span<const int> labels) {
  uint64_t h = Fnv1a64(std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  const auto data = x.data();
  h = Fnv1a64(std::string_view(reinterpret_cast<const char*>(data.data()),
                               data.size() * sizeof(double)),
              h);
  h = Fnv1a64(std::string_view(reinterpret_cast<const char*>(labels.data()),
                               labels.size() * sizeof(int)),
              h);
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

void AttachFeatureInfo(ModelArtifact& model, const dataio::Frame& train) {
  model.meta.feature_info.clear();
  for (const std::string& name : model.feature_order) {
    const dataio::Column& c = train.column(name);
    FeatureInfo info;
    info.name = name;
    info.kind = c.spec.kind;
    info.unit = c.spec.unit;
    const std::vector<double> observed = c.Observed();
    if (!observed.empty()) {
      const auto [lo, hi] = std::minmax_element(observed.begin(), observed.end());
      info.min = *lo;
      info.max = *hi;
    }
    if (c.spec.kind == dataio::ColumnKind::kScore) {
      info.min = std::min<double>(info.min, c.spec.score_min);
      info.max = std::max<double>(info.max, c.spec.score_max);
    } else if (c.spec.kind == dataio::ColumnKind::kBinary) {
      info.min = 0.0;
      info.max = 1.0;
    }
    model.meta.feature_info.push_back(std::move(info));
  }
}

Json TreeToJson(const trees::Tree& tree) {
  Json j;
  std::vector<int32_t> feature;
  std::vector<double> threshold;
  std::vector<int32_t> left;
  std::vector<int32_t> right;
  std::vector<double> weight;
  std::vector<double> gain;
  std::vector<uint32_t> offset;
  for (const trees::TreeNode& n : tree.nodes()) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    weight.push_back(n.weight);
    gain.push_back(n.gain);
    offset.push_back(n.value_offset);
  }
  j["value_width"] = tree.value_width();
  j["feature"] = feature;
  j["threshold"] = threshold;
  j["left"] = left;
  j["right"] = right;
  j["weight"] = weight;
  j["gain"] = gain;
  j["value_offset"] = offset;
  j["values"] = tree.values();
  return j;
}

trees::Tree TreeFromJson(const Json& j) {
  trees::Tree tree(j.at("value_width").get<std::size_t>());
  const auto feature = j.at("feature").get<std::vector<int32_t>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left").get<std::vector<int32_t>>();
  const auto right = j.at("right").get<std::vector<int32_t>>();
  const auto weight = j.at("weight").get<std::vector<double>>();
  const auto gain = j.at("gain").get<std::vector<double>>();
  const auto offset = j.at("value_offset").get<std::vector<uint32_t>>();
  tree.mutable_values() = j.at("values").get<std::vector<double>>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n ||
      weight.size() != n || gain.size() != n || offset.size() != n || n == 0) {
    throw DataError("malformed tree: node arrays differ in length");
  }
  const auto num_nodes = static_cast<int32_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    trees::TreeNode node;
    node.feature = feature[i];
    node.threshold = threshold[i];
    node.left = left[i];
    node.right = right[i];
    node.weight = weight[i];
    node.gain = gain[i];
    node.value_offset = offset[i];
    if (node.feature >= 0 &&
        (node.left <= static_cast<int32_t>(i) || node.left >= num_nodes ||
         node.right <= static_cast<int32_t>(i) || node.right >= num_nodes)) {
      throw DataError("malformed tree: bad child index");
    }
    if (node.value_offset + tree.value_width() > tree.values().size()) {
      throw DataError("malformed tree: value offset out of range");
    }
    tree.mutable_nodes().push_back(node);
  }
  return tree;
}

Json ArtifactToJson(const ModelArtifact& model) {
  Json j;
  j["format_version"] = kArtifactFormatVersion;
  j["family"] = std::string(FamilyName(model.family));
  j["feature_order"] = model.feature_order;
  j["threshold"] = model.threshold;
  j["input_transform"] =
      model.input_transform.empty() ? Json(nullptr) : model.input_transform.ToJson();
  Json meta;
  meta["seed"] = model.meta.seed;
  meta["hyperparams"] = model.meta.hyperparams;
  meta["train_fingerprint"] = model.meta.train_fingerprint;
  meta["train_rows"] = model.meta.train_rows;
  meta["converged"] = model.meta.converged;
  meta["diverged"] = model.meta.diverged;
  meta["iterations"] = model.meta.iterations;
  meta["degenerate"] = model.meta.degenerate;
  Json info = Json::array();
  for (const FeatureInfo& f : model.meta.feature_info) {
    info.push_back({{"name", f.name},
                    {"kind", std::string(dataio::ColumnKindName(f.kind))},
                    {"unit", f.unit},
                    {"min", f.min},
                    {"max", f.max}});
  }
  meta["feature_info"] = std::move(info);
  j["meta"] = std::move(meta);
  j["params"] = ParamsToJson(model.params);
  return j;
}

ModelArtifact ArtifactFromJson(const Json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kArtifactFormatVersion) {
      throw DataError("model format version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kArtifactFormatVersion) + ")");
    }
    ModelArtifact m;
    m.family = ParseFamily(j.at("family").get<std::string>());
    m.feature_order = j.at("feature_order").get<std::vector<std::string>>();
    m.threshold = j.at("threshold").get<double>();
    if (!j.at("input_transform").is_null()) {
      m.input_transform = preprocess::AffineTransform::FromJson(j.at("input_transform"));
    }
    const Json& meta = j.at("meta");
    m.meta.seed = meta.at("seed").get<uint64_t>();
    m.meta.hyperparams = meta.at("hyperparams");
    m.meta.train_fingerprint = meta.at("train_fingerprint").get<std::string>();
    m.meta.train_rows = meta.at("train_rows").get<std::size_t>();
    m.meta.converged = meta.at("converged").get<bool>();
    m.meta.diverged = meta.at("diverged").get<bool>();
    m.meta.iterations = meta.at("iterations").get<int>();
    m.meta.degenerate = meta.at("degenerate").get<bool>();
    for (const Json& f : meta.at("feature_info")) {
      FeatureInfo info;
      info.name = f.at("name").get<std::string>();
      info.kind = dataio::ParseColumnKind(f.at("kind").get<std::string>());
      info.unit = f.at("unit").get<std::string>();
      info.min = f.at("min").get<double>();
      info.max = f.at("max").get<double>();
      m.meta.feature_info.push_back(std::move(info));
    }
    m.params = ParamsFromJson(m.family, j.at("params"));
    const std::size_t width = ParamWidth(m);
    if (width != static_cast<std::size_t>(-1) && width != m.feature_order.size()) {
      throw DataError("model parameters do not match feature_order length");
    }
    if (!m.input_transform.empty() &&
        m.input_transform.size() != m.feature_order.size()) {
      throw DataError("input transform does not match feature_order length");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

void SaveArtifact(const ModelArtifact& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  out << ArtifactToJson(model).dump(1) << '\n';
  if (!out) throw IoError("failed writing model file '" + path + "'");
}

ModelArtifact LoadArtifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read model file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return ArtifactFromJson(j);
}

}  // namespace icurisk::models
