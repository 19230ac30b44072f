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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "icurisk/balance/folds.h"
#include "icurisk/balance/recipe.h"
#include "icurisk/common/error.h"
#include "icurisk/common/matrix.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/models/artifact.h"
#include "icurisk/models/fit.h"
#include "icurisk/models/forest_model.h"
#include "icurisk/models/gbdt.h"
#include "icurisk/models/gnb.h"
#include "icurisk/models/grid_search.h"
#include "icurisk/models/logistic.h"
#include "icurisk/models/mlp.h"
#include "icurisk/models/threshold.h"
#include "test_util.h"

namespace icurisk::models {
namespace {

struct Data {
  Matrix x;
  std::vector<int> y;
};

Data Linear(std::size_t n, std::size_t d, uint64_t seed) {
  Rng rng(seed);
  Data data{Matrix(n, d), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double z = -0.5;
    for (std::size_t j = 0; j < d; ++j) {
      data.x(i, j) = rng.Normal();
      z += (j % 2 == 0 ? 1.5 : -0.7) * data.x(i, j);
    }
    data.y[i] = rng.Uniform() < Sigmoid(z) ? 1 : 0;
  }
  return data;
}

double Accuracy(const ModelArtifact& m, const Data& d) {
  const std::vector<double> p = PredictProba(m, d.x);
  double hits = 0;
  for (std::size_t i = 0; i < p.size(); ++i) hits += (p[i] >= 0.5) == (d.y[i] == 1);
  return hits / p.size();
}

double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max(1e-8, std::max(std::abs(a), std::abs(b)));
}

TEST(Logistic, PositiveWeightOnMonotoneData) {
  const Matrix x = Matrix::FromRows({{0}, {1}});
  const std::vector<int> y = {0, 1};
  const ModelArtifact m = FitLogistic(x, y, LogisticOptions{});
  EXPECT_GT(std::get<LogisticParams>(m.params).weights[0], 0.0);
  EXPECT_TRUE(m.meta.converged);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  const Data d = Linear(60, 4, 3);
  Rng rng(17);
  for (const Penalty penalty : {Penalty::kL2, Penalty::kL1}) {
    for (int point = 0; point < 10; ++point) {
      std::vector<double> theta(5);
      for (auto& t : theta) t = rng.Normal();
      std::vector<double> grad;
      LogisticObjective(d.x, d.y, theta, penalty, 0.7, &grad);
      for (std::size_t k = 0; k < theta.size(); ++k) {
        const double h = 1e-6;
        std::vector<double> up = theta, down = theta;
        up[k] += h;
        down[k] -= h;
        const double fd = (LogisticObjective(d.x, d.y, up, penalty, 0.7, nullptr) -
                           LogisticObjective(d.x, d.y, down, penalty, 0.7, nullptr)) /
                          (2 * h);
        EXPECT_LT(RelativeError(grad[k], fd), 1e-4) << k;
      }
    }
  }
}

TEST(Logistic, SolutionIsStationary) {
  const Data d = Linear(200, 3, 5);
  LogisticOptions options;
  options.c = 0.5;
  const ModelArtifact m = FitLogistic(d.x, d.y, options);
  const auto& p = std::get<LogisticParams>(m.params);
  std::vector<double> theta = p.weights;
  theta.push_back(p.intercept);
  const double h = 1e-5;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    std::vector<double> up = theta, down = theta;
    up[k] += h;
    down[k] -= h;
    const double fd =
        (LogisticObjective(d.x, d.y, up, Penalty::kL2, 0.5, nullptr) -
         LogisticObjective(d.x, d.y, down, Penalty::kL2, 0.5, nullptr)) / (2 * h);
    EXPECT_NEAR(fd, 0.0, 1e-5);
  }
}

TEST(Logistic, ExtremePenaltyGivesInterceptOnly) {
  const Data d = Linear(200, 3, 6);
  for (const Penalty penalty : {Penalty::kL2, Penalty::kL1}) {
    LogisticOptions options;
    options.penalty = penalty;
    options.c = 1e-9;
    const ModelArtifact m = FitLogistic(d.x, d.y, options);
    const auto& p = std::get<LogisticParams>(m.params);
    for (const double w : p.weights) EXPECT_NEAR(w, 0.0, 1e-6);
    const double rate =
        std::accumulate(d.y.begin(), d.y.end(), 0.0) / static_cast<double>(d.y.size());
    EXPECT_NEAR(Sigmoid(p.intercept), rate, 1e-4);
  }
}

TEST(Logistic, L1ZeroesIrrelevantWeights) {
  Data d = Linear(300, 2, 8);
  Rng rng(1);
  Matrix x(300, 3);
  for (std::size_t i = 0; i < 300; ++i) {
    x(i, 0) = d.x(i, 0);
    x(i, 1) = d.x(i, 1);
    x(i, 2) = rng.Normal() * 1e-3;
  }
  LogisticOptions options;
  options.penalty = Penalty::kL1;
  options.c = 0.05;
  const ModelArtifact m = FitLogistic(x, d.y, options);
  EXPECT_EQ(std::get<LogisticParams>(m.params).weights[2], 0.0);
}

TEST(Logistic, NonConvergenceIsFlagged) {
  const Data d = Linear(100, 3, 2);
  LogisticOptions options;
  options.max_iter = 2;
  options.tol = 1e-14;
  const ModelArtifact m = FitLogistic(d.x, d.y, options);
  EXPECT_FALSE(m.meta.converged);
}

TEST(Gnb, SymmetricMidpoint) {
  const Matrix x = Matrix::FromRows({{-1, 2}, {-3, 4}, {1, -2}, {3, -4}});
  const std::vector<int> y = {0, 0, 1, 1};
  const ModelArtifact m = FitGnb(x, y);
  const std::vector<double> mid = {0, 0};
  EXPECT_NEAR(PredictOne(m, mid), 0.5, 1e-12);
}

TEST(Gnb, BoundaryAtOne) {
  const Matrix x = Matrix::FromRows({{-1}, {1}, {1}, {3}});
  const std::vector<int> y = {0, 0, 1, 1};
  const ModelArtifact m = FitGnb(x, y);
  const std::vector<double> at = {1.0};
  const std::vector<double> below = {0.9};
  const std::vector<double> above = {1.1};
  EXPECT_NEAR(PredictOne(m, at), 0.5, 1e-12);
  EXPECT_LT(PredictOne(m, below), 0.5);
  EXPECT_GT(PredictOne(m, above), 0.5);
}

TEST(Gnb, MatchesHandBayes) {
  const Matrix x = Matrix::FromRows({{1.0}, {2.0}, {4.0}, {7.0}});
  const std::vector<int> y = {0, 0, 0, 1};
  GnbOptions options;
  options.var_smoothing = 0.0;
  // Class 1 has one row, so its variance comes from the floor alone; use a
  // nonzero smoothing and replicate the floor by hand.
  options.var_smoothing = 0.1;
  const ModelArtifact m = FitGnb(x, y, options);
  const double all_mean = 3.5;
  const double all_var = ((1 - all_mean) * (1 - all_mean) + (2 - all_mean) * (2 - all_mean) +
                          (4 - all_mean) * (4 - all_mean) + (7 - all_mean) * (7 - all_mean)) /
                         4.0;
  const double floor = 0.1 * all_var;
  const double m0 = 7.0 / 3.0;
  const double v0 = ((1 - m0) * (1 - m0) + (2 - m0) * (2 - m0) + (4 - m0) * (4 - m0)) / 3.0 + floor;
  const double v1 = floor;
  const double q = 3.0;
  auto pdf = [](double v, double mu, double var) {
    return std::exp(-(v - mu) * (v - mu) / (2 * var)) / std::sqrt(2 * M_PI * var);
  };
  const double a = 0.75 * pdf(q, m0, v0);
  const double b = 0.25 * pdf(q, 7.0, v1);
  const std::vector<double> row = {q};
  EXPECT_NEAR(PredictOne(m, row), b / (a + b), 1e-9);
}

TEST(Forest, ConstantLabelsFlagged) {
  const Data d = Linear(50, 2, 1);
  const std::vector<int> ones(50, 1);
  const ModelArtifact m = FitForest(d.x, ones, ForestModelOptions{}, 1);
  EXPECT_TRUE(m.meta.degenerate);
  for (const double p : PredictProba(m, d.x)) EXPECT_EQ(p, 1.0);
}

TEST(Forest, SeparableTrainingAccuracy) {
  Rng rng(4);
  Data d{Matrix(500, 2), std::vector<int>(500)};
  for (std::size_t i = 0; i < 500; ++i) {
    d.x(i, 0) = rng.Normal();
    d.x(i, 1) = rng.Normal();
    d.y[i] = d.x(i, 0) + d.x(i, 1) > 0 ? 1 : 0;
  }
  const ModelArtifact m = FitForest(d.x, d.y, ForestModelOptions{}, 2);
  EXPECT_GE(Accuracy(m, d), 0.98);
  const ModelArtifact again = FitForest(d.x, d.y, ForestModelOptions{}, 2);
  EXPECT_EQ(PredictProba(m, d.x), PredictProba(again, d.x));
}

TEST(Gbdt, ZeroIterationsIsBaseRate) {
  const Data d = Linear(80, 2, 3);
  GbdtOptions options;
  options.n_iters = 0;
  const ModelArtifact m = FitGbdt(d.x, d.y, options, 1);
  const double rate = std::accumulate(d.y.begin(), d.y.end(), 0.0) / 80.0;
  for (const double p : PredictProba(m, d.x)) EXPECT_NEAR(p, rate, 1e-12);
}

TEST(Gbdt, TrainingLossNonIncreasing) {
  const Data d = Linear(300, 4, 9);
  GbdtOptions options;
  options.n_iters = 60;
  options.max_depth = 3;
  std::vector<double> loss;
  FitGbdt(d.x, d.y, options, 1, &loss);
  ASSERT_EQ(loss.size(), 61u);
  for (std::size_t i = 1; i < loss.size(); ++i) EXPECT_LE(loss[i], loss[i - 1] + 1e-12);
}

Matrix Ranked(const Matrix& x) {
  Matrix r(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x(a, j) < x(b, j); });
    for (std::size_t k = 0; k < order.size(); ++k) r(order[k], j) = static_cast<double>(k);
  }
  return r;
}

TEST(TreeModels, InvariantToMonotoneTransforms) {
  const Data d = Linear(150, 3, 12);
  Matrix cubed = d.x;
  for (double& v : cubed.mutable_data()) v = v * v * v + 5;
  const Matrix ranks = Ranked(d.x);
  GbdtOptions g;
  g.n_iters = 30;
  ForestModelOptions f;
  f.n_trees = 20;
  const auto base_g = PredictProba(FitGbdt(d.x, d.y, g, 3), d.x);
  const auto base_f = PredictProba(FitForest(d.x, d.y, f, 3), d.x);
  for (const Matrix* t : {static_cast<const Matrix*>(&cubed), &ranks}) {
    const auto pg = PredictProba(FitGbdt(*t, d.y, g, 3), *t);
    const auto pf = PredictProba(FitForest(*t, d.y, f, 3), *t);
    for (std::size_t i = 0; i < pg.size(); ++i) {
      EXPECT_NEAR(pg[i], base_g[i], 1e-12);
      EXPECT_NEAR(pf[i], base_f[i], 1e-12);
    }
  }
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
  const Data d = Linear(40, 3, 7);
  const std::size_t hidden = 5;
  Rng rng(3);
  for (int point = 0; point < 10; ++point) {
    std::vector<double> theta(MlpParamCount(3, hidden));
    for (auto& t : theta) t = rng.Normal() * 0.7;
    std::vector<double> grad;
    MlpObjective(d.x, d.y, theta, hidden, 0.01, &grad);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double h = 1e-6;
      std::vector<double> up = theta, down = theta;
      up[k] += h;
      down[k] -= h;
      const double fd = (MlpObjective(d.x, d.y, up, hidden, 0.01, nullptr) -
                         MlpObjective(d.x, d.y, down, hidden, 0.01, nullptr)) /
                        (2 * h);
      if (std::abs(fd) < 1e-7 && std::abs(grad[k]) < 1e-7) continue;
      EXPECT_LT(RelativeError(grad[k], fd), 1e-3) << "param " << k;
    }
  }
}

TEST(Mlp, PackRoundTrip) {
  std::vector<double> theta(MlpParamCount(3, 4));
  std::iota(theta.begin(), theta.end(), 0.0);
  EXPECT_EQ(PackMlp(UnpackMlp(theta, 3, 4)), theta);
}

TEST(Mlp, LearnsXor) {
  const Data d{Matrix::FromRows({{0, 0}, {0, 1}, {1, 0}, {1, 1}}), {0, 1, 1, 0}};
  MlpOptions options;
  options.hidden_units = 8;
  options.learning_rate = 0.05;
  options.batch_size = 4;
  options.epochs = 2000;
  options.alpha = 0.0;
  const ModelArtifact m = FitMlp(d.x, d.y, options, 1);
  EXPECT_EQ(Accuracy(m, d), 1.0);
  EXPECT_FALSE(m.meta.diverged);
}

TEST(Mlp, ZeroHiddenUnitsIsAnError) {
  const Data d = Linear(10, 2, 1);
  MlpOptions options;
  options.hidden_units = 0;
  EXPECT_THROW(FitMlp(d.x, d.y, options, 1), InvalidArgumentError);
}

TEST(Mlp, DeterministicGivenSeed) {
  const Data d = Linear(60, 2, 2);
  MlpOptions options;
  options.epochs = 20;
  EXPECT_EQ(PredictProba(FitMlp(d.x, d.y, options, 5), d.x),
            PredictProba(FitMlp(d.x, d.y, options, 5), d.x));
}

class AllFamiliesTest : public ::testing::TestWithParam<Family> {};

Json SmallHyperparams(Family family) {
  switch (family) {
    case Family::kForest:
      return {{"n_trees", 15}};
    case Family::kGbdt:
      return {{"n_iters", 25}};
    case Family::kMlp:
      return {{"epochs", 30}};
    default:
      return Json::object();
  }
}

TEST_P(AllFamiliesTest, BoundedDeterministicAndRowEquivariant) {
  const Data d = Linear(120, 3, 21);
  const Json hp = ResolveHyperparams(GetParam(), SmallHyperparams(GetParam()));
  const ModelArtifact m = FitFamily(GetParam(), d.x, d.y, hp, 4);
  const ModelArtifact again = FitFamily(GetParam(), d.x, d.y, hp, 4);
  const std::vector<double> p = PredictProba(m, d.x);
  EXPECT_EQ(p, PredictProba(again, d.x));
  for (const double v : p) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  std::vector<std::size_t> perm(d.x.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(2);
  rng.Shuffle(perm);
  const std::vector<double> q = PredictProba(m, d.x.SelectRows(perm));
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(q[i], p[perm[i]]);
  EXPECT_EQ(m.feature_order.size(), 3u);
  EXPECT_EQ(m.meta.seed, 4u);
}

TEST_P(AllFamiliesTest, ArtifactJsonRoundTrip) {
  const Data d = Linear(100, 3, 22);
  const Json hp = ResolveHyperparams(GetParam(), SmallHyperparams(GetParam()));
  ModelArtifact m = FitFamily(GetParam(), d.x, d.y, hp, 9);
  m.threshold = 0.3125;
  const ModelArtifact back = ArtifactFromJson(Json::parse(ArtifactToJson(m).dump()));
  EXPECT_EQ(back.family, m.family);
  EXPECT_EQ(back.feature_order, m.feature_order);
  EXPECT_EQ(back.threshold, m.threshold);
  EXPECT_EQ(back.meta.hyperparams, m.meta.hyperparams);
  EXPECT_EQ(PredictProba(back, d.x), PredictProba(m, d.x));
}

INSTANTIATE_TEST_SUITE_P(Families, AllFamiliesTest,
                         ::testing::ValuesIn(AllFamilies()),
                         [](const auto& info) { return std::string(FamilyName(info.param)); });

TEST(Artifact, VersionMismatchIsAnError) {
  const Data d = Linear(30, 2, 1);
  Json j = ArtifactToJson(FitGnb(d.x, d.y));
  j["format_version"] = kArtifactFormatVersion + 1;
  EXPECT_THROW(ArtifactFromJson(j), DataError);
}

TEST(Artifact, ColumnMismatchIsAnError) {
  const Data d = Linear(30, 2, 1);
  const ModelArtifact m = FitGnb(d.x, d.y);
  EXPECT_THROW(PredictProba(m, Matrix(2, 3)), InvalidArgumentError);
}

TEST(Hyperparams, UnknownKeyAndBadTypeAreConfigErrors) {
  EXPECT_THROW(ResolveHyperparams(Family::kGbdt, {{"depth", 3}}), ConfigError);
  EXPECT_THROW(ResolveHyperparams(Family::kGbdt, {{"max_depth", "three"}}), ConfigError);
  EXPECT_EQ(ResolveHyperparams(Family::kLogistic, {{"c", 0.1}})["c"], 0.1);
}

TEST(Grid, DefaultLatticeSizes) {
  EXPECT_EQ(DefaultGrid(Family::kLogistic).Lattice().size(), 4u);
  EXPECT_EQ(DefaultGrid(Family::kGbdt).Lattice().size(), 12u);
  EXPECT_EQ(DefaultGrid(Family::kForest).Lattice().size(), 2u);
  EXPECT_EQ(DefaultGrid(Family::kMlp).Lattice().size(), 2u);
  const std::vector<Json> lattice = DefaultGrid(Family::kGbdt).Lattice();
  EXPECT_EQ(lattice[0]["n_iters"], 200);
  EXPECT_EQ(lattice[1]["n_iters"], 400);
}

TEST(Threshold, EnumeratedExample) {
  const std::vector<double> p = {0.9, 0.7, 0.6, 0.4, 0.2};
  const std::vector<int> y = {1, 1, 0, 1, 0};
  EXPECT_EQ(ChooseThreshold(p, y, 0.8), 0.4);
  EXPECT_EQ(ChooseThreshold(p, y, 1.0), 0.4);
  EXPECT_EQ(ChooseThreshold(p, y, 0.6), 0.7);
}

TEST(Threshold, FloorHoldsAndIsTight) {
  Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + rng.UniformIndex(80);
    std::vector<double> p(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::round(rng.Uniform() * 20) / 20;
      y[i] = rng.Bernoulli(0.3) ? 1 : 0;
    }
    y[0] = 1;
    const double floor = 0.5 + 0.5 * rng.Uniform();
    const double t = ChooseThreshold(p, y, floor);
    auto sensitivity = [&](double thr) {
      double tp = 0, pos = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (y[i] != 1) continue;
        pos += 1;
        tp += p[i] >= thr;
      }
      return tp / pos;
    };
    EXPECT_GE(sensitivity(t), floor);
    for (const double c : p) {
      if (c > t) EXPECT_LT(sensitivity(c), floor) << c;
    }
  }
}

TEST(Threshold, NoPositivesIsAnError) {
  const std::vector<double> p = {0.1, 0.2};
  const std::vector<int> y = {0, 0};
  EXPECT_THROW(ChooseThreshold(p, y, 0.8), DataError);
}

balance::Recipe GbdtRecipe(const dataio::Frame& f) {
  balance::Recipe r;
  r.features = f.FeatureNames();
  r.preprocess.imputer = preprocess::ImputerKind::kMedianMode;
  r.family = Family::kGbdt;
  return r;
}

TEST(GridSearch, SinglePointAndExhaustive) {
  const dataio::Frame f = testing::SignalAndNoise(150, 3, 2.0, 4);
  const balance::FoldPlan plan = balance::StratifiedKFold(f.Labels(), 3, 1);
  HyperGrid one = HyperGrid::FromJson(Family::kLogistic, {{"c", {0.5}}});
  balance::Recipe recipe = GbdtRecipe(f);
  recipe.family = Family::kLogistic;
  const GridResult r1 = GridSearch(f, one, plan, recipe, 1);
  EXPECT_EQ(r1.table.size(), 1u);
  EXPECT_EQ(r1.best["c"], 0.5);
  const GridResult all = GridSearch(f, DefaultGrid(Family::kLogistic), plan, recipe, 1);
  EXPECT_EQ(all.table.size(), 4u);
  for (const GridRow& row : all.table) EXPECT_EQ(row.fold_auroc.size(), 3u);
}

TEST(GridSearch, PrefersSaneLearningRate) {
  const dataio::Frame f = testing::SignalAndNoise(200, 3, 2.0, 6);
  const balance::FoldPlan plan = balance::StratifiedKFold(f.Labels(), 3, 2);
  const HyperGrid grid = HyperGrid::FromJson(
      Family::kGbdt, {{"learning_rate", {0.1, 10.0}}, {"n_iters", {40}}, {"max_depth", {2}}});
  const GridResult r = GridSearch(f, grid, plan, GbdtRecipe(f), 3);
  EXPECT_EQ(r.best["learning_rate"], 0.1);
  EXPECT_GT(r.table[0].mean_auroc, r.table[1].mean_auroc);
}

TEST(GridSearch, EmptyGridIsAnError) {
  const dataio::Frame f = testing::SignalAndNoise(60, 1, 2.0, 6);
  const balance::FoldPlan plan = balance::StratifiedKFold(f.Labels(), 3, 2);
  HyperGrid empty;
  empty.family = Family::kLogistic;
  EXPECT_THROW(GridSearch(f, empty, plan, GbdtRecipe(f), 1), ConfigError);
}

}  // namespace
}  // namespace icurisk::models
