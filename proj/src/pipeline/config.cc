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


#include "icurisk/pipeline/config.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "icurisk/common/error.h"

namespace icurisk::pipeline {
namespace {

void CheckKeys(const Json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + where + "." + key + "'");
    }
  }
}

std::filesystem::path ResolvePath(const Json& value, const std::filesystem::path& base) {
  if (value.is_null()) return {};
  std::filesystem::path p = value.get<std::string>();
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

Json PathToJson(const std::filesystem::path& p) {
  return p.empty() ? Json(nullptr) : Json(p.generic_string());
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

std::string_view SmotePlacementName(SmotePlacement placement) {
  switch (placement) {
    case SmotePlacement::kFoldsAndFinal:
      return "folds_and_final";
    case SmotePlacement::kFoldsOnly:
      return "folds_only";
    case SmotePlacement::kNone:
      return "none";
  }
  return "none";
}

SmotePlacement ParseSmotePlacement(std::string_view name) {
  if (name == "folds_and_final") return SmotePlacement::kFoldsAndFinal;
  if (name == "folds_only") return SmotePlacement::kFoldsOnly;
  if (name == "none") return SmotePlacement::kNone;
  throw ConfigError("unknown smote placement '" + std::string(name) + "'");
}

const models::HyperGrid* RunConfig::FindGrid(models::Family family) const {
  for (const auto& g : grids) {
    if (g.family == family) return &g;
  }
  return nullptr;
}

RunConfig DefaultRunConfig() {
  RunConfig c;
  for (const models::Family f : models::AllFamilies()) c.grids.push_back(models::DefaultGrid(f));
  return c;
}

Json RunConfig::ToJson() const {
  Json in;
  if (input.kind == InputKind::kSynthetic) {
    in = {{"kind", "synthetic"},
          {"stats", PathToJson(input.stats)},
          {"n", input.n},
          {"missing_fraction", input.missing_fraction}};
  } else {
    in = {{"kind", "csv"},
          {"csv", PathToJson(input.csv)},
          {"schema", PathToJson(input.schema)},
          {"missing_token", input.missing_token}};
  }
  Json grid_doc = Json::object();
  for (const auto& g : grids) grid_doc[std::string(models::FamilyName(g.family))] = g.ToJson();
  return {
      {"input", in},
      {"seed", seed},
      {"preprocess",
       {{"imputer", std::string(preprocess::ImputerKindName(preprocess.imputer))},
        {"max_iter", preprocess.iterative.max_iter},
        {"tol", preprocess.iterative.tol},
        {"num_trees", preprocess.iterative.num_trees},
        {"max_depth", preprocess.iterative.max_depth},
        {"sample_fraction", preprocess.iterative.sample_fraction},
        {"target_smoothing", preprocess.target_smoothing}}},
      {"scaler", std::string(preprocess::ScalerKindName(scaler))},
      {"selection",
       {{"k1", selection.k1},
        {"k2", selection.k2},
        {"features", selection.features},
        {"gini_trees", selection.gini_trees}}},
      {"smote", {{"placement", std::string(SmotePlacementName(smote))}, {"k", smote_k}}},
      {"cv_folds", cv_folds},
      {"test_fraction", test_fraction},
      {"models", grid_doc},
      {"threshold",
       {{"floor", threshold.floor},
        {"source", threshold.source == ThresholdSource::kTest ? "test" : "oof"}}},
      {"bootstrap", {{"replicates", bootstrap}, {"alpha", alpha}}},
      {"ablation", {{"family", std::string(models::FamilyName(ablation_family))}}},
      {"ale",
       {{"n_bins", ale.n_bins}, {"max_rows", ale.max_rows}, {"features", ale.features}}},
      {"posterior",
       {{"family", std::string(models::FamilyName(posterior.family))},
        {"samples", posterior.samples}}},
      {"output_dir", output_dir.generic_string()},
  };
}

RunConfig RunConfig::FromJson(const Json& doc, const std::filesystem::path& base_dir) {
  CheckKeys(doc,
            {"input", "seed", "preprocess", "scaler", "selection", "smote", "cv_folds",
             "test_fraction", "models", "threshold", "bootstrap", "ablation", "ale",
             "posterior", "output_dir"},
            "config");
  RunConfig c = DefaultRunConfig();
  try {
    if (doc.contains("input")) {
      const Json& in = doc["input"];
      CheckKeys(in, {"kind", "stats", "n", "missing_fraction", "csv", "schema", "missing_token"},
                "input");
      const std::string kind = in.value("kind", std::string("synthetic"));
      if (kind == "synthetic") {
        c.input.kind = InputKind::kSynthetic;
      } else if (kind == "csv") {
        c.input.kind = InputKind::kCsv;
      } else {
        throw ConfigError("unknown input kind '" + kind + "'");
      }
      if (in.contains("stats")) c.input.stats = ResolvePath(in["stats"], base_dir);
      c.input.n = in.value("n", c.input.n);
      c.input.missing_fraction = in.value("missing_fraction", c.input.missing_fraction);
      if (in.contains("csv")) c.input.csv = ResolvePath(in["csv"], base_dir);
      if (in.contains("schema")) c.input.schema = ResolvePath(in["schema"], base_dir);
      c.input.missing_token = in.value("missing_token", std::string());
    }
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("preprocess")) {
      const Json& p = doc["preprocess"];
      CheckKeys(p,
                {"imputer", "max_iter", "tol", "num_trees", "max_depth", "sample_fraction",
                 "target_smoothing"},
                "preprocess");
      if (p.contains("imputer")) {
        c.preprocess.imputer = preprocess::ParseImputerKind(p["imputer"].get<std::string>());
      }
      auto& it = c.preprocess.iterative;
      it.max_iter = p.value("max_iter", it.max_iter);
      it.tol = p.value("tol", it.tol);
      it.num_trees = p.value("num_trees", it.num_trees);
      it.max_depth = p.value("max_depth", it.max_depth);
      it.sample_fraction = p.value("sample_fraction", it.sample_fraction);
      c.preprocess.target_smoothing = p.value("target_smoothing", c.preprocess.target_smoothing);
    }
    if (doc.contains("scaler")) {
      c.scaler = preprocess::ParseScalerKind(doc["scaler"].get<std::string>());
    }
    if (doc.contains("selection")) {
      const Json& s = doc["selection"];
      CheckKeys(s, {"k1", "k2", "features", "gini_trees"}, "selection");
      c.selection.k1 = s.value("k1", c.selection.k1);
      c.selection.k2 = s.value("k2", c.selection.k2);
      if (s.contains("features") && !s["features"].is_null()) {
        c.selection.features = s["features"].get<std::vector<std::string>>();
      }
      c.selection.gini_trees = s.value("gini_trees", c.selection.gini_trees);
    }
    if (doc.contains("smote")) {
      const Json& s = doc["smote"];
      CheckKeys(s, {"placement", "k"}, "smote");
      if (s.contains("placement")) {
        c.smote = ParseSmotePlacement(s["placement"].get<std::string>());
      }
      c.smote_k = s.value("k", c.smote_k);
    }
    c.cv_folds = doc.value("cv_folds", c.cv_folds);
    c.test_fraction = doc.value("test_fraction", c.test_fraction);
    if (doc.contains("models")) {
      const Json& m = doc["models"];
      if (!m.is_object() || m.empty()) {
        throw ConfigError("'models' must be a non-empty object of family grids");
      }
      c.grids.clear();
      for (const auto& [name, axes] : m.items()) {
        const models::Family family = models::ParseFamily(name);
        c.grids.push_back(axes.is_null() || axes == "default"
                              ? models::DefaultGrid(family)
                              : models::HyperGrid::FromJson(family, axes));
        if (c.grids.back().axes.empty()) {
          throw ConfigError("grid for '" + name + "' has no axes");
        }
      }
    }
    if (doc.contains("threshold")) {
      const Json& t = doc["threshold"];
      CheckKeys(t, {"floor", "source"}, "threshold");
      c.threshold.floor = t.value("floor", c.threshold.floor);
      const std::string source = t.value("source", std::string("test"));
      if (source == "test") {
        c.threshold.source = ThresholdSource::kTest;
      } else if (source == "oof") {
        c.threshold.source = ThresholdSource::kOof;
      } else {
        throw ConfigError("threshold.source must be 'test' or 'oof'");
      }
    }
    if (doc.contains("bootstrap")) {
      const Json& b = doc["bootstrap"];
      CheckKeys(b, {"replicates", "alpha"}, "bootstrap");
      c.bootstrap = b.value("replicates", c.bootstrap);
      c.alpha = b.value("alpha", c.alpha);
    }
    if (doc.contains("ablation")) {
      CheckKeys(doc["ablation"], {"family"}, "ablation");
      if (doc["ablation"].contains("family")) {
        c.ablation_family = models::ParseFamily(doc["ablation"]["family"].get<std::string>());
      }
    }
    if (doc.contains("ale")) {
      const Json& a = doc["ale"];
      CheckKeys(a, {"n_bins", "max_rows", "features"}, "ale");
      c.ale.n_bins = a.value("n_bins", c.ale.n_bins);
      c.ale.max_rows = a.value("max_rows", c.ale.max_rows);
      if (a.contains("features") && !a["features"].is_null()) {
        c.ale.features = a["features"].get<std::vector<std::string>>();
      }
    }
    if (doc.contains("posterior")) {
      const Json& p = doc["posterior"];
      CheckKeys(p, {"family", "samples"}, "posterior");
      if (p.contains("family")) {
        c.posterior.family = models::ParseFamily(p["family"].get<std::string>());
      }
      c.posterior.samples = p.value("samples", c.posterior.samples);
    }
    if (doc.contains("output_dir")) c.output_dir = doc["output_dir"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  Require(c.input.kind != InputKind::kCsv || (!c.input.csv.empty() && !c.input.schema.empty()),
          "csv input needs both 'csv' and 'schema'");
  Require(c.input.n >= 50, "input.n must be at least 50");
  Require(c.input.missing_fraction >= 0.0 && c.input.missing_fraction < 1.0,
          "input.missing_fraction must lie in [0, 1)");
  Require(c.selection.k1 >= 1 && c.selection.k2 >= 1, "selection.k1 and k2 must be >= 1");
  Require(c.selection.k2 <= c.selection.k1, "selection.k2 must not exceed k1");
  Require(c.selection.gini_trees >= 1, "selection.gini_trees must be >= 1");
  Require(c.smote_k >= 1, "smote.k must be >= 1");
  Require(c.cv_folds >= 2, "cv_folds must be >= 2");
  Require(c.test_fraction > 0.0 && c.test_fraction < 1.0, "test_fraction must lie in (0, 1)");
  Require(c.threshold.floor > 0.0 && c.threshold.floor <= 1.0,
          "threshold.floor must lie in (0, 1]");
  Require(c.bootstrap >= 100, "bootstrap.replicates must be >= 100");
  Require(c.alpha > 0.0 && c.alpha < 1.0, "bootstrap.alpha must lie in (0, 1)");
  Require(c.ale.n_bins >= 2, "ale.n_bins must be >= 2");
  Require(c.posterior.samples >= 1, "posterior.samples must be >= 1");
  Require(c.FindGrid(c.ablation_family) != nullptr,
          "ablation.family must be one of the configured models");
  Require(c.FindGrid(c.posterior.family) != nullptr,
          "posterior.family must be one of the configured models");
  std::set<models::Family> seen;
  for (const auto& g : c.grids) {
    Require(seen.insert(g.family).second, "duplicate model family in 'models'");
  }
  std::set<std::string> unique(c.selection.features.begin(), c.selection.features.end());
  Require(unique.size() == c.selection.features.size(), "selection.features has duplicates");
  return c;
}

void ApplyOverride(Json& doc, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    value = text;
  }
  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' is malformed");
    if (!node->is_object()) throw ConfigError("override key '" + key + "' crosses a value");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = Json::object();
    start = dot + 1;
  }
}

RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  for (const std::string& o : overrides) ApplyOverride(doc, o);
  return RunConfig::FromJson(doc, path.parent_path());
}

}  // namespace icurisk::pipeline
