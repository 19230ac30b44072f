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


// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icurisk/balance/smote.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/dataio/split.h"
#include "icurisk/dataio/synthetic.h"
#include "icurisk/evalstats/ablation.h"
#include "icurisk/evalstats/metrics.h"
#include "icurisk/featselect/selection.h"
#include "icurisk/interpret/ale.h"
#include "icurisk/models/gbdt.h"
#include "icurisk/models/logistic.h"
#include "icurisk/models/mlp.h"
#include "icurisk/pipeline/config.h"
#include "icurisk/pipeline/run.h"
#include "icurisk/posterior/risk.h"
#include "test_util.h"

namespace {

namespace fs = std::filesystem;
using namespace icurisk;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max(1e-8, std::max(std::abs(a), std::abs(b)));
}

Outcome AurocOracle() {
  const auto start = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  int datasets = 0;
  while (datasets < 500) {
    const std::size_t n = 2 + rng.UniformIndex(11);
    std::vector<double> s(n);
    std::vector<int> y(n);
    // Coarse scores so ties are common.
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.UniformIndex(5)) / 4.0;
      y[i] = rng.Bernoulli(0.4) ? 1 : 0;
    }
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == static_cast<long>(n)) continue;
    double concordant = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (y[i] != 1 || y[j] != 0) continue;
        pairs += 1.0;
        concordant += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      }
    }
    worst = std::max(worst, std::abs(evalstats::Auroc(s, y) - concordant / pairs));
    ++datasets;
  }
  const double secs = Seconds(start);
  return {worst <= 1e-12 && secs < 5.0,
          Fmt("500 datasets, max |auroc - brute force| = %.3g, %.3f s", worst, secs)};
}

Outcome AnovaOracle() {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  const double f = featselect::AnovaF(a, b).f;
  const std::vector<double> c = {0, 2, 4};
  const double zero = featselect::AnovaF(a, c).f;
  std::vector<double> a2, b2;
  for (const double v : a) a2.push_back(7.5 * v - 3.0);
  for (const double v : b) b2.push_back(7.5 * v - 3.0);
  const double scaled = featselect::AnovaF(a2, b2).f;
  const bool pass = std::abs(f - 13.5) <= 1e-9 && std::abs(zero) <= 1e-9 &&
                    std::abs(scaled - f) <= 1e-9;
  return {pass, Fmt("F = %.12g, equal means F = %.3g, affine-scaled F = %.12g", f, zero, scaled)};
}

Outcome GradientChecks() {
  Rng rng(202);
  const std::size_t n = 50, d = 4, hidden = 5;
  Matrix x(n, d);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      x(i, j) = rng.Normal();
      z += (j % 2 ? -0.8 : 1.2) * x(i, j);
    }
    y[i] = rng.Uniform() < Sigmoid(z) ? 1 : 0;
  }
  const double h = 1e-6;
  double worst_logistic = 0.0, worst_mlp = 0.0;
  auto check = [&](std::size_t dim,
                   const std::function<double(const std::vector<double>&, std::vector<double>*)>&
                       objective) {
    double worst = 0.0;
    for (int point = 0; point < 10; ++point) {
      std::vector<double> theta(dim);
      for (double& t : theta) t = 0.7 * rng.Normal();
      std::vector<double> grad;
      objective(theta, &grad);
      for (std::size_t k = 0; k < dim; ++k) {
        std::vector<double> up = theta, down = theta;
        up[k] += h;
        down[k] -= h;
        const double fd = (objective(up, nullptr) - objective(down, nullptr)) / (2 * h);
        if (std::abs(fd) < 1e-7 && std::abs(grad[k]) < 1e-7) continue;
        worst = std::max(worst, RelativeError(grad[k], fd));
      }
    }
    return worst;
  };
  for (const models::Penalty penalty : {models::Penalty::kL2, models::Penalty::kL1}) {
    worst_logistic = std::max(
        worst_logistic, check(d + 1, [&](const std::vector<double>& t, std::vector<double>* g) {
          return models::LogisticObjective(x, y, t, penalty, 0.5, g);
        }));
  }
  worst_mlp = check(models::MlpParamCount(d, hidden),
                    [&](const std::vector<double>& t, std::vector<double>* g) {
                      return models::MlpObjective(x, y, t, hidden, 1e-3, g);
                    });
  return {worst_logistic < 1e-3 && worst_mlp < 1e-3,
          Fmt("max relative error logistic %.3g, mlp %.3g (10 points each)", worst_logistic,
              worst_mlp)};
}

Outcome GbdtMonotone() {
  const dataio::Frame cohort =
      dataio::GenerateSyntheticCohort(dataio::DefaultIcuCohortStats(), 1478, 303);
  const std::vector<std::string> names = cohort.FeatureNames();
  const Matrix x = cohort.ToMatrix(names);
  models::GbdtOptions options;
  options.n_iters = 200;
  options.subsample = 1.0;
  std::vector<double> loss;
  models::FitGbdt(x, cohort.Labels(), options, 1, &loss);
  std::size_t violations = 0;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < loss.size(); ++i) {
    if (loss[i] > loss[i - 1]) {
      ++violations;
      worst_rise = std::max(worst_rise, loss[i] - loss[i - 1]);
    }
  }
  return {violations == 0 && loss.size() == 201,
          Fmt("log-loss %.4f -> %.4f over %.0f iterations, %.0f increases", loss.front(),
              loss.back(), static_cast<double>(loss.size() - 1),
              static_cast<double>(violations))};
}

Outcome SmoteGeometry() {
  const Matrix minority = Matrix::FromRows({{0.5, -2.0, 3.0}, {4.0, 1.0, -1.0}});
  const Matrix s = balance::Smote(minority, 1000, 1, 404);
  double worst = 0.0;
  bool inside = s.rows() == 1000;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    const double t = (s(i, 0) - minority(0, 0)) / (minority(1, 0) - minority(0, 0));
    inside = inside && t >= 0.0 && t <= 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double expect = minority(0, j) + t * (minority(1, j) - minority(0, j));
      worst = std::max(worst, std::abs(s(i, j) - expect));
    }
  }
  Matrix x(1002, 3);
  std::vector<int> y(1002, 0);
  for (std::size_t j = 0; j < 3; ++j) {
    x(0, j) = minority(0, j);
    x(1, j) = minority(1, j);
  }
  y[0] = y[1] = 1;
  Rng rng(5);
  for (std::size_t i = 2; i < 1002; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = rng.Normal();
  }
  const balance::BalancedData b = balance::BalanceWithSmote(x, y, 5, 405);
  const auto pos = std::count(b.y.begin(), b.y.end(), 1);
  const auto neg = std::count(b.y.begin(), b.y.end(), 0);
  return {inside && worst <= 1e-12 && pos == neg,
          Fmt("max off-segment deviation %.3g; balanced counts %.0f / %.0f", worst,
              static_cast<double>(pos), static_cast<double>(neg))};
}

Outcome AleRecovery() {
  Rng rng(606);
  const std::size_t n = 2000;
  std::vector<double> x1(n), x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    x1[i] = 2 * rng.Uniform() - 1;
    x2[i] = rng.Normal();
  }
  const dataio::Frame frame({dataio::MakeColumn(testing::Spec("x1"), x1),
                             dataio::MakeColumn(testing::Spec("x2"), x2)});
  models::ModelArtifact model;
  model.family = models::Family::kLogistic;
  model.params = models::LogisticParams{{3.0, 0.0}, 0.0};
  model.feature_order = {"x1", "x2"};
  interpret::AleOptions options;
  options.n_bins = 10;
  const interpret::AleCurve used = interpret::AleFirstOrder(model, frame, "x1", options, 1);
  const interpret::AleCurve unused = interpret::AleFirstOrder(model, frame, "x2", options, 1);
  double sup = 0.0, flat = 0.0;
  // The analytic centered curve is sigma(3x) - 1/2 since E[sigma(3U)] = 1/2.
  for (std::size_t k = 0; k < used.edges.size(); ++k) {
    sup = std::max(sup, std::abs(used.ale[k] - (Sigmoid(3 * used.edges[k]) - 0.5)));
  }
  for (const double v : unused.ale) flat = std::max(flat, std::abs(v));
  return {sup < 0.02 && flat <= 1e-8,
          Fmt("sup-norm error %.4f, unused-feature max |ALE| %.3g", sup, flat)};
}

Outcome PosteriorCollapseAndConvergence(const pipeline::RunResult& run) {
  const pipeline::FamilyResult* gbdt = run.Find(models::Family::kGbdt);
  const models::ModelArtifact& model = gbdt->model;
  Rng rng(707);
  bool exact = true;
  for (int trial = 0; trial < 5; ++trial) {
    posterior::PriorSpec points;
    std::vector<double> row;
    for (const auto& fi : model.meta.feature_info) {
      double v = fi.min + rng.Uniform() * (fi.max - fi.min);
      if (fi.kind == dataio::ColumnKind::kBinary) v = rng.Bernoulli(0.5) ? 1.0 : 0.0;
      if (fi.kind == dataio::ColumnKind::kScore) v = std::round(v);
      points.Set(fi.name, posterior::PointMass{v});
      row.push_back(v);
    }
    const posterior::PosteriorSummary s = posterior::PosteriorRisk(model, points, 500, trial);
    const double f = models::PredictOne(model, row);
    exact = exact && s.mean == f && s.sd == 0.0 && s.q025 == f && s.q975 == f;
  }
  const posterior::PriorSpec priors =
      posterior::PriorSpec::Load((run.output_dir / "priors.json").string());
  auto se = [&](std::size_t n, uint64_t offset) {
    std::vector<double> means;
    for (uint64_t s = 0; s < 20; ++s) {
      means.push_back(
          posterior::PosteriorRisk(model, priors, n, DeriveSeed(offset, s)).mean);
    }
    return SampleSd(means);
  };
  const double se5 = se(5000, 5000);
  const double se20 = se(20000, 20000);
  const double ratio = se5 / se20;
  std::ostringstream detail;
  detail << "point-mass priors exact: " << (exact ? "yes" : "no") << "; "
         << Fmt("SE(5k) %.6f / SE(20k) %.6f = %.3f (target 2.0 +/- 0.3)", se5, se20, ratio);
  return {exact && std::abs(ratio - 2.0) <= 0.3, detail.str()};
}

Outcome EndToEnd(const pipeline::RunResult& run, double seconds) {
  const pipeline::FamilyResult* gbdt = run.Find(models::Family::kGbdt);
  const double auroc = gbdt->test.auroc;
  const double sensitivity = gbdt->test.sensitivity;
  double p = 1.0;
  for (const auto& row : run.report["cohort_comparison"]) {
    if (row["feature"] == "apsiii") p = row["p"].get<double>();
  }
  const double q025 = run.posterior.q025;
  const bool a = auroc >= 0.80, b = sensitivity >= 0.8, c = p < 0.001, d = q025 > 0.196;
  const bool time_ok = seconds < 300.0;
  std::ostringstream detail;
  detail << "(a) gbdt test AUROC " << Fmt("%.4f", auroc) << (a ? " ok" : " FAIL")
         << "; (b) sensitivity " << Fmt("%.4f", sensitivity) << (b ? " ok" : " FAIL")
         << "; (c) apsiii Welch p " << Fmt("%.3g", p) << (c ? " ok" : " FAIL")
         << "; (d) posterior q025 " << Fmt("%.4f", q025) << " vs 0.196"
         << (d ? " ok" : " FAIL") << "; runtime " << Fmt("%.1f", seconds) << " s"
         << (time_ok ? " ok" : " FAIL");
  return {a && b && c && d && time_ok, detail.str()};
}

Outcome AblationSanity() {
  balance::Recipe recipe;
  recipe.preprocess.imputer = preprocess::ImputerKind::kMedianMode;
  recipe.family = models::Family::kLogistic;
  bool dominant_ok = true;
  double worst_without = 0.0;
  std::vector<double> noise_abs(3, 0.0);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const dataio::Frame f = testing::SignalAndNoise(600, 3, 3.0, 900 + seed);
    const dataio::FrameSplit s = dataio::StratifiedSplit(f, 0.3, seed);
    recipe.features = f.FeatureNames();
    const evalstats::AblationReport r = evalstats::Ablation(s.train, s.test, recipe, seed);
    dominant_ok = dominant_ok && r.entries.front().feature == "signal";
    for (const auto& e : r.entries) {
      if (e.feature == "signal") {
        worst_without = std::max(worst_without, e.auroc_without);
      } else {
        noise_abs[std::stoi(e.feature.substr(5)) - 1] += std::abs(e.delta) / 5.0;
      }
    }
  }
  const double worst_noise = *std::max_element(noise_abs.begin(), noise_abs.end());
  std::ostringstream detail;
  detail << "dominant feature has max delta in 5/5 seeds: " << (dominant_ok ? "yes" : "no")
         << Fmt("; max AUROC without it %.4f; max mean |noise delta| %.4f", worst_without,
                worst_noise);
  return {dominant_ok && worst_without < 0.6 && worst_noise < 0.02, detail.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / "icurisk_acceptance";
  fs::remove_all(root);
  std::vector<std::pair<int, Outcome>> results;
  auto report = [&](int id, Outcome o) {
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    results.emplace_back(id, std::move(o));
  };
  auto guarded = [&](int id, const std::function<Outcome()>& body) {
    try {
      report(id, body());
    } catch (const std::exception& e) {
      report(id, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, AurocOracle);
  guarded(2, AnovaOracle);
  guarded(3, GradientChecks);
  guarded(4, GbdtMonotone);
  guarded(5, SmoteGeometry);
  guarded(6, AleRecovery);

  pipeline::RunConfig config = pipeline::DefaultRunConfig();
  config.output_dir = root / "run_a";
  std::optional<pipeline::RunResult> run;
  double seconds = 0.0;
  try {
    const auto start = Clock::now();
    run = pipeline::RunPipeline(config);
    seconds = Seconds(start);
  } catch (const std::exception& e) {
    std::printf("default pipeline failed: %s\n", e.what());
  }

  if (run) {
    guarded(7, [&] { return PosteriorCollapseAndConvergence(*run); });
    guarded(8, [&] { return EndToEnd(*run, seconds); });
  } else {
    report(7, {false, "default pipeline did not complete"});
    report(8, {false, "default pipeline did not complete"});
  }
  guarded(9, AblationSanity);
  guarded(10, [&] {
    pipeline::RunConfig second = config;
    second.output_dir = root / "run_b";
    pipeline::RunPipeline(second);
    const std::string a = Slurp(config.output_dir / "run_report.json");
    const std::string b = Slurp(second.output_dir / "run_report.json");
    return Outcome{!a.empty() && a == b,
                   Fmt("two default runs, report sizes %.0f and %.0f bytes, identical: ",
                       static_cast<double>(a.size()), static_cast<double>(b.size())) +
                       (a == b ? "yes" : "no")};
  });

  int failed = 0;
  for (const auto& [id, o] : results) failed += o.pass ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
