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


#include "icurisk/posterior/priors.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "icurisk/common/error.h"
#include "icurisk/common/stats.h"

namespace icurisk::posterior {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kMinMass = 1e-12;
constexpr double kRejectionMass = 0.3;

double TruncMass(const TruncNormal& t) {
  return NormalCdf((t.hi - t.mu) / t.sd) - NormalCdf((t.lo - t.mu) / t.sd);
}

double SampleTruncNormal(const TruncNormal& t, SplitMixRng& rng) {
  double v = 0.0;
  if (t.sd == 0.0) {
    v = t.mu;
  } else {
    double a = (t.lo - t.mu) / t.sd;
    double b = (t.hi - t.mu) / t.sd;
    if (TruncMass(t) >= kRejectionMass) {
      do {
        v = rng.Normal();
      } while (v < a || v > b);
    } else {
      // Inverse CDF on the side of the interval nearer the mode keeps the
      // CDF values away from 1.
      const bool flip = a > 0.0;
      if (flip) {
        std::swap(a, b);
        a = -a;
        b = -b;
      }
      const double fa = NormalCdf(a);
      const double fb = NormalCdf(b);
      v = NormalQuantile(fa + rng.UniformOpen() * (fb - fa));
      v = std::clamp(v, a, b);
      if (flip) v = -v;
    }
    v = t.mu + t.sd * v;
    v = std::clamp(v, t.lo, t.hi);
  }
  if (t.round) {
    v = std::clamp(std::round(v), std::ceil(t.lo), std::floor(t.hi));
  }
  return v;
}

double NumberField(const Json& j, const char* key, const std::string& feature) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidArgumentError("prior for '" + feature + "' needs numeric '" + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

void ValidatePrior(const std::string& feature, const Prior& prior) {
  auto fail = [&feature](const std::string& what) {
    throw InvalidArgumentError("prior for '" + feature + "': " + what);
  };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointMass>) {
          if (!std::isfinite(p.value)) fail("value must be finite");
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          if (!std::isfinite(p.mu) || !std::isfinite(p.sd) || !(p.sd >= 0.0)) {
            fail("needs finite mu and sd >= 0");
          }
          if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.lo < p.hi)) {
            fail("needs finite lo < hi");
          }
          if (p.sd == 0.0) {
            if (p.mu < p.lo || p.mu > p.hi) fail("mu lies outside [lo, hi] with sd 0");
          } else if (!(TruncMass(p) >= kMinMass)) {
            fail("truncation interval has negligible probability mass");
          }
          if (p.round && std::ceil(p.lo) > std::floor(p.hi)) {
            fail("no integer lies within [lo, hi]");
          }
        } else if constexpr (std::is_same_v<T, BernoulliPrior>) {
          if (!(p.p >= 0.0 && p.p <= 1.0)) fail("p must be in [0, 1]");
        } else {
          if (p.values.empty()) fail("empirical prior needs values");
          for (const double v : p.values) {
            if (!std::isfinite(v)) fail("empirical values must be finite");
          }
        }
      },
      prior);
}

double SamplePrior(const Prior& prior, SplitMixRng& rng) {
  return std::visit(
      [&rng](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointMass>) {
          return p.value;
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          return SampleTruncNormal(p, rng);
        } else if constexpr (std::is_same_v<T, BernoulliPrior>) {
          return rng.UniformOpen() < p.p ? 1.0 : 0.0;
        } else {
          const auto i = static_cast<std::size_t>(
              rng.UniformOpen() * static_cast<double>(p.values.size()));
          return p.values[std::min(i, p.values.size() - 1)];
        }
      },
      prior);
}

void PriorSpec::Set(const std::string& feature, Prior prior) {
  ValidatePrior(feature, prior);
  for (auto& [name, p] : entries_) {
    if (name == feature) {
      p = std::move(prior);
      return;
    }
  }
  entries_.emplace_back(feature, std::move(prior));
}

const Prior* PriorSpec::Find(const std::string& feature) const {
  for (const auto& [name, p] : entries_) {
    if (name == feature) return &p;
  }
  return nullptr;
}

Json PriorSpec::ToJson() const {
  Json j = Json::object();
  for (const auto& [name, prior] : entries_) {
    j[name] = std::visit(
        [](const auto& p) -> Json {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PointMass>) {
            return {{"type", "point_mass"}, {"value", p.value}};
          } else if constexpr (std::is_same_v<T, TruncNormal>) {
            return {{"type", "trunc_normal"}, {"mu", p.mu},  {"sd", p.sd},
                    {"lo", p.lo},             {"hi", p.hi},  {"round", p.round}};
          } else if constexpr (std::is_same_v<T, BernoulliPrior>) {
            return {{"type", "bernoulli"}, {"p", p.p}};
          } else {
            return {{"type", "empirical"}, {"values", p.values}};
          }
        },
        prior);
  }
  return j;
}

PriorSpec PriorSpec::FromJson(const Json& j) {
  if (!j.is_object()) throw InvalidArgumentError("priors must be a JSON object");
  PriorSpec spec;
  for (const auto& [name, entry] : j.items()) {
    if (!entry.is_object() || !entry.contains("type") || !entry.at("type").is_string()) {
      throw InvalidArgumentError("prior for '" + name + "' needs a 'type'");
    }
    const std::string type = entry.at("type").get<std::string>();
    if (type == "point_mass") {
      spec.Set(name, PointMass{NumberField(entry, "value", name)});
    } else if (type == "trunc_normal") {
      TruncNormal t;
      t.mu = NumberField(entry, "mu", name);
      t.sd = NumberField(entry, "sd", name);
      t.lo = NumberField(entry, "lo", name);
      t.hi = NumberField(entry, "hi", name);
      if (entry.contains("round")) {
        if (!entry.at("round").is_boolean()) {
          throw InvalidArgumentError("prior for '" + name + "': 'round' must be boolean");
        }
        t.round = entry.at("round").get<bool>();
      }
      spec.Set(name, t);
    } else if (type == "bernoulli") {
      spec.Set(name, BernoulliPrior{NumberField(entry, "p", name)});
    } else if (type == "empirical") {
      if (!entry.contains("values") || !entry.at("values").is_array()) {
        throw InvalidArgumentError("prior for '" + name + "' needs 'values'");
      }
      Empirical e;
      for (const Json& v : entry.at("values")) {
        if (!v.is_number()) {
          throw InvalidArgumentError("prior for '" + name + "': values must be numbers");
        }
        e.values.push_back(v.get<double>());
      }
      spec.Set(name, std::move(e));
    } else {
      throw InvalidArgumentError("prior for '" + name + "' has unknown type '" +
                                 type + "'");
    }
  }
  return spec;
}

PriorSpec PriorSpec::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read priors file '" + path + "'");
  try {
    return FromJson(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("priors file '" + path + "' is not valid JSON: " + e.what());
  } catch (const InvalidArgumentError& e) {
    throw DataError("priors file '" + path + "': " + e.what());
  }
}

void PriorSpec::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write priors file '" + path + "'");
  out << ToJson().dump(2) << '\n';
}

PriorSpec NonsurvivorPriors(const dataio::Frame& frame,
                            std::span<const std::string> features) {
  if (!frame.has_label()) throw DataError("nonsurvivor priors need a labeled frame");
  const std::vector<int> labels = frame.Labels();
  std::vector<std::size_t> deceased;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] == 1) deceased.push_back(r);
  }
  if (deceased.empty()) throw DataError("no deceased rows to build priors from");
  const std::vector<std::string> names =
      features.empty() ? frame.FeatureNames()
                       : std::vector<std::string>(features.begin(), features.end());

  PriorSpec spec;
  for (const std::string& name : names) {
    const dataio::Column& c = frame.column(name);
    std::vector<double> v;
    for (const std::size_t r : deceased) {
      if (!c.is_missing(r)) v.push_back(c.values[r]);
    }
    if (v.empty()) throw DataError("no observed deceased values for '" + name + "'");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double mean = Mean(v);
    if (*lo == *hi) {
      spec.Set(name, PointMass{*lo});
      continue;
    }
    switch (c.spec.kind) {
      case dataio::ColumnKind::kBinary:
        spec.Set(name, BernoulliPrior{mean});
        break;
      case dataio::ColumnKind::kCategorical:
        spec.Set(name, Empirical{v});
        break;
      case dataio::ColumnKind::kContinuous:
      case dataio::ColumnKind::kScore: {
        TruncNormal t;
        t.mu = mean;
        t.sd = v.size() > 1 ? SampleSd(v) : 0.0;
        t.lo = *lo;
        t.hi = *hi;
        t.round = c.spec.kind == dataio::ColumnKind::kScore;
        spec.Set(name, t);
        break;
      }
    }
  }
  return spec;
}

Matrix SampleProfiles(const PriorSpec& priors, std::span<const std::string> features,
                      std::size_t n, uint64_t seed) {
  if (n == 0) throw InvalidArgumentError("sample count must be >= 1");
  std::vector<const Prior*> columns;
  for (const std::string& name : features) {
    const Prior* p = priors.Find(name);
    if (!p) throw InvalidArgumentError("no prior for model feature '" + name + "'");
    columns.push_back(p);
  }
  Matrix out(n, features.size());
  for (std::size_t i = 0; i < n; ++i) {
    SplitMixRng rng(DeriveSeed(seed, static_cast<uint64_t>(i)));
    auto row = out.Row(i);
    for (std::size_t j = 0; j < columns.size(); ++j) row[j] = SamplePrior(*columns[j], rng);
  }
  return out;
}

}  // namespace icurisk::posterior
