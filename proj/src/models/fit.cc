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


#include "icurisk/models/fit.h"

#include "icurisk/common/error.h"
#include "icurisk/models/forest_model.h"
#include "icurisk/models/gbdt.h"
#include "icurisk/models/gnb.h"
#include "icurisk/models/logistic.h"
#include "icurisk/models/mlp.h"

namespace icurisk::models {
namespace {

Json Defaults(Family family) {
  switch (family) {
    case Family::kLogistic:
      return {{"penalty", "l2"}, {"c", 1.0}, {"tol", 1e-6}, {"max_iter", 10000}};
    case Family::kGnb:
      return {{"var_smoothing", 1e-9}};
    case Family::kForest:
      return {{"n_trees", 200}, {"max_depth", 0}, {"min_leaf", 1.0}};
    case Family::kGbdt:
      return {{"n_iters", 200},   {"learning_rate", 0.1}, {"max_depth", 3},
              {"min_leaf", 1.0},  {"subsample", 1.0},     {"l2_leaf", 1.0}};
    case Family::kMlp:
      return {{"hidden_units", 16}, {"learning_rate", 1e-3}, {"batch_size", 32},
              {"epochs", 200},      {"alpha", 1e-4}};
  }
  return Json::object();
}

double Number(const Json& h, const char* key) { return h.at(key).get<double>(); }
int Integer(const Json& h, const char* key) { return h.at(key).get<int>(); }

}  // namespace

Json ResolveHyperparams(Family family, const Json& overrides) {
  Json resolved = Defaults(family);
  if (overrides.is_null()) return resolved;
  if (!overrides.is_object()) {
    throw ConfigError("hyperparameters must be an object");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (!resolved.contains(key)) {
      throw ConfigError("unknown hyperparameter '" + key + "' for family " +
                        std::string(FamilyName(family)));
    }
    const Json& def = resolved[key];
    if (def.is_string()) {
      if (!value.is_string()) throw ConfigError("hyperparameter '" + key + "' must be text");
    } else if (def.is_number_integer()) {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ConfigError("hyperparameter '" + key + "' must be a non-negative integer");
      }
    } else if (!value.is_number()) {
      throw ConfigError("hyperparameter '" + key + "' must be a number");
    }
    resolved[key] = def.is_number_float() ? Json(value.get<double>()) : value;
  }
  return resolved;
}

ModelArtifact FitFamily(Family family, const Matrix& x, std::span<const int> y,
                        const Json& hyperparams, uint64_t seed) {
  const Json h = ResolveHyperparams(family, hyperparams);
  ModelArtifact model;
  switch (family) {
    case Family::kLogistic: {
      LogisticOptions o;
      o.penalty = ParsePenalty(h.at("penalty").get<std::string>());
      o.c = Number(h, "c");
      o.tol = Number(h, "tol");
      o.max_iter = Integer(h, "max_iter");
      model = FitLogistic(x, y, o);
      break;
    }
    case Family::kGnb:
      model = FitGnb(x, y, {Number(h, "var_smoothing")});
      break;
    case Family::kForest: {
      ForestModelOptions o;
      o.n_trees = Integer(h, "n_trees");
      o.max_depth = Integer(h, "max_depth");
      o.min_leaf = Number(h, "min_leaf");
      model = FitForest(x, y, o, seed);
      break;
    }
    case Family::kGbdt: {
      GbdtOptions o;
      o.n_iters = Integer(h, "n_iters");
      o.learning_rate = Number(h, "learning_rate");
      o.max_depth = Integer(h, "max_depth");
      o.min_leaf = Number(h, "min_leaf");
      o.subsample = Number(h, "subsample");
      o.l2_leaf = Number(h, "l2_leaf");
      model = FitGbdt(x, y, o, seed);
      break;
    }
    case Family::kMlp: {
      MlpOptions o;
      o.hidden_units = Integer(h, "hidden_units");
      o.learning_rate = Number(h, "learning_rate");
      o.batch_size = Integer(h, "batch_size");
      o.epochs = Integer(h, "epochs");
      o.alpha = Number(h, "alpha");
      model = FitMlp(x, y, o, seed);
      break;
    }
  }
  model.meta.seed = seed;
  model.meta.hyperparams = h;
  model.meta.train_rows = x.rows();
  model.meta.train_fingerprint = Fingerprint(x, y);
  return model;
}

std::vector<Json> HyperGrid::Lattice() const {
  std::vector<Json> out = {Json::object()};
  for (const auto& [name, values] : axes) {
    if (values.empty()) {
      throw ConfigError("grid axis '" + name + "' has no candidates");
    }
    std::vector<Json> next;
    for (const Json& partial : out) {
      for (const Json& v : values) {
        Json point = partial;
        point[name] = v;
        next.push_back(std::move(point));
      }
    }
    out = std::move(next);
  }
  return out;
}

Json HyperGrid::ToJson() const {
  Json j = Json::object();
  for (const auto& [name, values] : axes) j[name] = values;
  return j;
}

HyperGrid HyperGrid::FromJson(Family family, const Json& axes) {
  if (!axes.is_object()) throw ConfigError("grid must be an object of axes");
  HyperGrid grid;
  grid.family = family;
  for (const auto& [name, values] : axes.items()) {
    if (!values.is_array() || values.empty()) {
      throw ConfigError("grid axis '" + name + "' must be a non-empty array");
    }
    std::vector<Json> candidates;
    for (const Json& v : values) {
      ResolveHyperparams(family, Json{{name, v}});
      candidates.push_back(v);
    }
    grid.axes.emplace_back(name, std::move(candidates));
  }
  return grid;
}

HyperGrid DefaultGrid(Family family) {
  HyperGrid grid;
  grid.family = family;
  switch (family) {
    case Family::kLogistic:
      grid.axes = {{"c", {0.01, 0.1, 1.0, 10.0}}};
      break;
    case Family::kGnb:
      grid.axes = {{"var_smoothing", {1e-9}}};
      break;
    case Family::kForest:
      grid.axes = {{"n_trees", {200}}, {"max_depth", {0, 8}}};
      break;
    case Family::kGbdt:
      grid.axes = {{"learning_rate", {0.05, 0.1}},
                   {"max_depth", {3, 4, 6}},
                   {"n_iters", {200, 400}}};
      break;
    case Family::kMlp:
      grid.axes = {{"hidden_units", {16, 32}}};
      break;
  }
  return grid;
}

double ConfigCost(Family family, const Json& hyperparams) {
  const Json h = ResolveHyperparams(family, hyperparams);
  switch (family) {
    case Family::kLogistic:
      return 0.0;
    case Family::kGnb:
      return 0.0;
    case Family::kForest:
      return Number(h, "n_trees");
    case Family::kGbdt:
      return Number(h, "n_iters");
    case Family::kMlp:
      return Number(h, "hidden_units") * Number(h, "epochs");
  }
  return 0.0;
}

}  // namespace icurisk::models
