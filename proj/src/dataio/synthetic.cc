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


#include "icurisk/dataio/synthetic.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"

namespace icurisk::dataio {
namespace {

using nlohmann::ordered_json;

FeatureStats Continuous(std::string name, std::string unit, double m0,
                        double s0, double m1, double s1) {
  FeatureStats f;
  f.spec = {std::move(name), ColumnKind::kContinuous, std::move(unit)};
  f.survivor = {m0, s0};
  f.nonsurvivor = {m1, s1};
  return f;
}

FeatureStats Score(std::string name, int lo, int hi, double m0, double s0,
                   double m1, double s1) {
  FeatureStats f;
  f.spec = {std::move(name), ColumnKind::kScore, "Score", lo, hi};
  f.survivor = {m0, s0};
  f.nonsurvivor = {m1, s1};
  return f;
}

FeatureStats Binary(std::string name, double p0, double p1) {
  FeatureStats f;
  f.spec = {std::move(name), ColumnKind::kBinary, "Presence"};
  f.survivor = {p0, std::sqrt(p0 * (1 - p0))};
  f.nonsurvivor = {p1, std::sqrt(p1 * (1 - p1))};
  return f;
}

ordered_json MomentsToJson(const StratumMoments& m) {
  return ordered_json{{"mean", m.mean}, {"sd", m.sd}};
}

StratumMoments MomentsFromJson(const ordered_json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("mean")) {
    throw ConfigError(where + ": expected {\"mean\": ..., \"sd\": ...}");
  }
  return {j.at("mean").get<double>(), j.value("sd", 0.0)};
}

}  // namespace

void Validate(const StratumStats& stats) {
  if (!(stats.prevalence > 0.0 && stats.prevalence < 1.0)) {
    throw InvalidArgumentError("prevalence must lie in (0, 1)");
  }
  if (stats.features.empty()) throw InvalidArgumentError("no features in stats");
  for (const FeatureStats& f : stats.features) {
    for (const StratumMoments* m : {&f.survivor, &f.nonsurvivor}) {
      if (!(m->sd >= 0.0) || !std::isfinite(m->mean)) {
        throw InvalidArgumentError("feature '" + f.spec.name +
                                   "': sd must be >= 0 and mean finite");
      }
      if (f.spec.kind == ColumnKind::kBinary && !(m->mean >= 0.0 && m->mean <= 1.0)) {
        throw InvalidArgumentError("binary feature '" + f.spec.name +
                                   "': probability outside [0, 1]");
      }
    }
    if (f.spec.kind == ColumnKind::kCategorical) {
      throw InvalidArgumentError("generator does not model categorical '" +
                                 f.spec.name + "'");
    }
    const auto [lo, hi] = ClampBounds(f);
    if (!(lo <= hi)) {
      throw InvalidArgumentError("feature '" + f.spec.name + "': empty bounds");
    }
  }
}

std::pair<double, double> ClampBounds(const FeatureStats& f) {
  if (f.bounds) return *f.bounds;
  if (f.spec.kind == ColumnKind::kScore) {
    return {static_cast<double>(f.spec.score_min),
            static_cast<double>(f.spec.score_max)};
  }
  if (f.spec.kind == ColumnKind::kBinary) return {0.0, 1.0};
  const double lo = std::min(f.survivor.mean - 4 * f.survivor.sd,
                             f.nonsurvivor.mean - 4 * f.nonsurvivor.sd);
  const double hi = std::max(f.survivor.mean + 4 * f.survivor.sd,
                             f.nonsurvivor.mean + 4 * f.nonsurvivor.sd);
  return {lo, hi};
}

Frame GenerateSyntheticCohort(const StratumStats& stats, std::size_t n,
                              uint64_t seed) {
  Validate(stats);
  if (n < 50) throw InvalidArgumentError("synthetic cohort needs n >= 50");
  const std::size_t d = stats.features.size();
  std::vector<std::vector<double>> values(d, std::vector<double>(n));
  std::vector<double> labels(n);
  std::vector<std::pair<double, double>> bounds(d);
  for (std::size_t j = 0; j < d; ++j) bounds[j] = ClampBounds(stats.features[j]);

  Rng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    const bool died = rng.Bernoulli(stats.prevalence);
    labels[r] = died ? 1.0 : 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const FeatureStats& f = stats.features[j];
      const StratumMoments& m = died ? f.nonsurvivor : f.survivor;
      double v;
      if (f.spec.kind == ColumnKind::kBinary) {
        v = rng.Bernoulli(m.mean) ? 1.0 : 0.0;
      } else {
        v = m.sd > 0 ? rng.Normal(m.mean, m.sd) : m.mean;
        v = std::clamp(v, bounds[j].first, bounds[j].second);
        if (f.spec.kind == ColumnKind::kScore) {
          v = std::clamp(std::round(v), std::ceil(bounds[j].first),
                         std::floor(bounds[j].second));
        }
      }
      values[j][r] = v;
    }
  }

  std::vector<Column> columns;
  columns.reserve(d + 1);
  for (std::size_t j = 0; j < d; ++j) {
    columns.push_back(MakeColumn(stats.features[j].spec, std::move(values[j])));
  }
  columns.push_back(MakeColumn({stats.label, ColumnKind::kBinary, "Outcome"},
                               std::move(labels)));
  return Frame(std::move(columns), stats.label);
}

StratumStats DefaultIcuCohortStats() {
  StratumStats s;
  s.prevalence = 0.196;
  s.label = "died_28d";
  s.features = {
      Score("apsiii", 0, 163, 49.98, 16.65, 64.28, 20.24),
      Score("gcs_eye_opening", 1, 4, 3.30, 0.75, 2.75, 1.04),
      Continuous("o2_flow", "L/min", 6.66, 7.32, 10.71, 12.01),
      Score("braden_mobility", 1, 4, 2.51, 0.51, 2.14, 0.54),
      Continuous("inr_pt", "Ratio", 1.52, 0.66, 1.86, 0.92),
      Score("braden_nutrition", 1, 4, 2.35, 0.44, 2.03, 0.38),
      Continuous("rdw_sd", "fL", 51.50, 7.59, 54.82, 9.34),
      Continuous("po2", "mmHg", 118.11, 66.41, 98.40, 50.99),
      Continuous("anion_gap", "mEq/L", 14.51, 3.73, 16.70, 4.68),
      Continuous("age", "Years", 75.43, 7.07, 77.26, 6.89),
      Continuous("phosphorous", "mg/dL", 4.06, 1.14, 4.50, 1.39),
      Continuous("total_bilirubin", "mg/dL", 0.89, 1.13, 1.39, 2.55),
      Binary("vasopressin", 0.18, 0.52),
      Score("braden_friction_shear", 1, 3, 2.14, 0.40, 1.90, 0.38),
      Binary("lorazepam", 0.29, 0.58),
      Binary("severe_sepsis_septic_shock", 0.15, 0.40),
      Binary("multi_lumen", 0.23, 0.39),
      Binary("transthoracic_echo", 0.17, 0.26),
      Binary("invasive_ventilation", 0.38, 0.47),
  };
  // Cohort inclusion restricted age to 65-90.
  s.features[9].bounds = std::make_pair(65.0, 90.0);
  return s;
}

ordered_json StratumStatsToJson(const StratumStats& stats) {
  ordered_json features = ordered_json::object();
  for (const FeatureStats& f : stats.features) {
    ordered_json j;
    j["kind"] = std::string(ColumnKindName(f.spec.kind));
    j["unit"] = f.spec.unit;
    if (f.spec.kind == ColumnKind::kScore) {
      j["score_range"] = {f.spec.score_min, f.spec.score_max};
    }
    j["survivor"] = MomentsToJson(f.survivor);
    j["nonsurvivor"] = MomentsToJson(f.nonsurvivor);
    if (f.bounds) j["bounds"] = {f.bounds->first, f.bounds->second};
    features[f.spec.name] = std::move(j);
  }
  return ordered_json{{"prevalence", stats.prevalence},
                      {"label", stats.label},
                      {"features", std::move(features)}};
}

StratumStats StratumStatsFromJson(const ordered_json& doc) {
  StratumStats s;
  try {
    s.prevalence = doc.at("prevalence").get<double>();
    s.label = doc.value("label", std::string("died_28d"));
    for (const auto& [name, j] : doc.at("features").items()) {
      FeatureStats f;
      f.spec.name = name;
      f.spec.kind = ParseColumnKind(j.value("kind", std::string("continuous")));
      f.spec.unit = j.value("unit", std::string());
      if (f.spec.kind == ColumnKind::kScore) {
        const auto& range = j.at("score_range");
        f.spec.score_min = range.at(0).get<int>();
        f.spec.score_max = range.at(1).get<int>();
      }
      f.survivor = MomentsFromJson(j.at("survivor"), name + ".survivor");
      f.nonsurvivor = MomentsFromJson(j.at("nonsurvivor"), name + ".nonsurvivor");
      if (j.contains("bounds")) {
        f.bounds = std::make_pair(j["bounds"].at(0).get<double>(),
                                  j["bounds"].at(1).get<double>());
      }
      s.features.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed stratum stats: ") + e.what());
  }
  Validate(s);
  return s;
}

StratumStats LoadStratumStats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return StratumStatsFromJson(doc);
}

}  // namespace icurisk::dataio
