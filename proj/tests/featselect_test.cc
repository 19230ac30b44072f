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
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/dataio/frame.h"
#include "icurisk/featselect/selection.h"
#include "test_util.h"

namespace icurisk::featselect {
namespace {

using dataio::Frame;
using testing::MakeFrame;
using testing::SignalAndNoise;

TEST(Anova, HandExample) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, 5, 6};
  const AnovaResult r = AnovaF(a, b);
  EXPECT_NEAR(r.f, 13.5, 1e-9);
  EXPECT_FALSE(r.flagged);
}

TEST(Anova, EqualMeansGiveZero) {
  const std::vector<double> a = {1, 2};
  EXPECT_EQ(AnovaF(a, a).f, 0.0);
}

TEST(Anova, SmallGroupIsFlagged) {
  const std::vector<double> a = {1};
  const std::vector<double> b = {4, 5, 6};
  const AnovaResult r = AnovaF(a, b);
  EXPECT_EQ(r.f, 0.0);
  EXPECT_TRUE(r.flagged);
}

TEST(Anova, ZeroWithinVarianceIsInfinite) {
  const std::vector<double> a = {1, 1};
  const std::vector<double> b = {2, 2};
  const AnovaResult r = AnovaF(a, b);
  EXPECT_TRUE(std::isinf(r.f));
  EXPECT_TRUE(r.flagged);
}

// One-way ANOVA written out with sums of squares.
double OracleF(const std::vector<double>& a, const std::vector<double>& b) {
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const double grand = mean(all);
  const double ssb = a.size() * std::pow(mean(a) - grand, 2) +
                     b.size() * std::pow(mean(b) - grand, 2);
  double ssw = 0;
  for (const double v : a) ssw += std::pow(v - mean(a), 2);
  for (const double v : b) ssw += std::pow(v - mean(b), 2);
  return ssb / (ssw / (all.size() - 2));
}

TEST(Anova, MatchesOracleAndAffineInvariance) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> a(5 + rng.UniformIndex(30)), b(5 + rng.UniformIndex(30));
    for (auto& v : a) v = rng.Normal();
    for (auto& v : b) v = rng.Normal() + 0.5;
    const double f = AnovaF(a, b).f;
    EXPECT_NEAR(f, OracleF(a, b), 1e-9 * std::max(1.0, f));
    const double scale = 0.01 + rng.Uniform() * 100;
    const double shift = rng.Normal() * 50;
    std::vector<double> a2 = a, b2 = b;
    for (auto& v : a2) v = v * scale + shift;
    for (auto& v : b2) v = v * scale + shift;
    EXPECT_NEAR(AnovaF(a2, b2).f, f, 1e-9 * std::max(1.0, f));
    std::vector<double> a10 = a, b10 = b;
    for (auto& v : a10) v *= 10;
    for (auto& v : b10) v *= 10;
    EXPECT_NEAR(AnovaF(a10, b10).f, f, 1e-9);
  }
}

TEST(Anova, ColumnSkipsMissing) {
  dataio::Column c = testing::WithMissing(
      dataio::MakeColumn(testing::Spec("x"), {1, 2, 3, 4, 5, 6, 100}), {6});
  const std::vector<int> labels = {0, 0, 0, 1, 1, 1, 1};
  EXPECT_NEAR(AnovaF(c, labels).f, 13.5, 1e-9);
}

TEST(SelectKBest, KeepsTopKAndTiesByName) {
  const Frame f = MakeFrame({{"zeta", {1, 2, 3, 4, 5, 6}},
                             {"alpha", {1, 2, 3, 4, 5, 6}},
                             {"noise", {3, 1, 2, 2, 1, 3}}},
                            {0, 0, 0, 1, 1, 1});
  const FeatureRanking r = SelectKBest(f, 3);
  EXPECT_EQ(r.Names(), (std::vector<std::string>{"alpha", "zeta", "noise"}));
  EXPECT_EQ(r.stage, RankingStage::kAnova);
  EXPECT_EQ(SelectKBest(f, 1).Names(), (std::vector<std::string>{"alpha"}));
  EXPECT_THROW(SelectKBest(f, 0), InvalidArgumentError);
  EXPECT_THROW(SelectKBest(f, 4), InvalidArgumentError);
}

TEST(SelectKBest, ThirtyOfSixHundred) {
  Rng rng(6);
  const std::size_t n = 120;
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % 3 == 0 ? 1 : 0;
  for (int j = 0; j < 600; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.Normal() + (j < 10 ? labels[i] : 0);
    cols.emplace_back("f" + std::to_string(j), v);
  }
  const FeatureRanking r = SelectKBest(MakeFrame(cols, labels), 30);
  ASSERT_EQ(r.features.size(), 30u);
  for (std::size_t i = 1; i < r.features.size(); ++i) {
    EXPECT_GE(r.features[i - 1].score, r.features[i].score);
  }
  for (const auto& rf : r.features) EXPECT_GE(rf.score, 0.0);
}

TEST(Gini, ThresholdFeatureDominates) {
  Rng rng(2);
  const std::size_t n = 500;
  std::vector<double> x1(n), x2(n);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x1[i] = rng.Normal();
    x2[i] = rng.Normal();
    y[i] = x1[i] > 0 ? 1 : 0;
  }
  const Frame f = MakeFrame({{"x1", x1}, {"x2", x2}}, y);
  const std::vector<std::string> names = {"x1", "x2"};
  const FeatureRanking r = GiniImportance(f, names, 4);
  ASSERT_EQ(r.features[0].name, "x1");
  EXPECT_GE(r.features[0].score, 0.9);
  EXPECT_NEAR(r.features[0].score + r.features[1].score, 1.0, 1e-9);
}

TEST(Gini, PureNoiseIsBalanced) {
  double ratio_sum = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Frame f = SignalAndNoise(300, 4, 0.0, 100 + seed);
    const std::vector<std::string> names = f.FeatureNames();
    const FeatureRanking r = GiniImportance(f, names, seed);
    ratio_sum += r.features.front().score / r.features.back().score;
  }
  EXPECT_LE(ratio_sum / 10, 3.0);
}

TEST(Gini, PermutationEquivariant) {
  const Frame f = SignalAndNoise(200, 4, 2.0, 9);
  std::vector<std::string> names = f.FeatureNames();
  GiniOptions options;
  options.num_trees = 30;
  const FeatureRanking a = GiniImportance(f, names, 7, options);
  std::reverse(names.begin(), names.end());
  names.push_back("y");
  const Frame permuted = f.SelectColumns(names);
  names.pop_back();
  const FeatureRanking b = GiniImportance(permuted, names, 7, options);
  ASSERT_EQ(a.features.size(), b.features.size());
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    EXPECT_EQ(a.features[i].name, b.features[i].name);
    EXPECT_NEAR(a.features[i].score, b.features[i].score, 1e-12);
  }
}

TEST(Gini, OneRowIsAnError) {
  const Frame f = MakeFrame({{"x", {1}}}, {1});
  const std::vector<std::string> names = {"x"};
  EXPECT_THROW(GiniImportance(f, names, 1), DataError);
}

TEST(TwoStage, SizesAndSubset) {
  const Frame f = SignalAndNoise(300, 34, 1.5, 3);
  const TwoStageResult r = TwoStageSelect(f, 30, 19, 1);
  EXPECT_EQ(r.anova.features.size(), 30u);
  EXPECT_EQ(r.selected.size(), 19u);
  const std::vector<std::string> anova = r.anova.Names();
  const std::set<std::string> survivors(anova.begin(), anova.end());
  for (const auto& name : r.selected) EXPECT_EQ(survivors.count(name), 1u);
  EXPECT_THROW(TwoStageSelect(f, 5, 6, 1), InvalidArgumentError);
}

TEST(TwoStage, EqualKIsReorderingOnly) {
  const Frame f = SignalAndNoise(200, 8, 1.5, 4);
  const TwoStageResult r = TwoStageSelect(f, 6, 6, 1);
  std::vector<std::string> a = r.anova.Names();
  std::vector<std::string> b = r.selected;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(TwoStage, InformativeFeatureNeverDropped) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Frame f = SignalAndNoise(300, 12, 2.0, 50 + seed);
    const TwoStageResult r = TwoStageSelect(f, 8, 4, seed);
    EXPECT_NE(std::find(r.selected.begin(), r.selected.end(), "signal"),
              r.selected.end())
        << seed;
  }
}

TEST(Ranking, CsvLayout) {
  const Frame f = SignalAndNoise(100, 2, 2.0, 1);
  const std::vector<FeatureRanking> rankings = {SelectKBest(f, 3)};
  std::ostringstream out;
  WriteRankingCsv(out, rankings);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "feature,stage,score,rank");
  EXPECT_NE(text.find("signal,anova,"), std::string::npos);
}

}  // namespace
}  // namespace icurisk::featselect
