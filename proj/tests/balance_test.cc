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
#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "icurisk/balance/folds.h"
#include "icurisk/balance/recipe.h"
#include "icurisk/balance/smote.h"
#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/models/artifact.h"
#include "test_util.h"

namespace icurisk::balance {
namespace {

TEST(Smote, SegmentBetweenTwoPoints) {
  const Matrix minority = Matrix::FromRows({{0, 0}, {1, 1}});
  const Matrix s = Smote(minority, 200, 1, 7);
  ASSERT_EQ(s.rows(), 200u);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    EXPECT_EQ(s(i, 0), s(i, 1));
    EXPECT_GT(s(i, 0), 0.0);
    EXPECT_LT(s(i, 0), 1.0);
  }
}

TEST(Smote, CountAndBoundingBox) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.UniformIndex(30);
    Matrix minority(m, 3);
    for (double& v : minority.mutable_data()) v = std::round(rng.Normal() * 100) / 10;
    const std::size_t n_syn = rng.UniformIndex(100);
    const Matrix s = Smote(minority, n_syn, 5, trial);
    ASSERT_EQ(s.rows(), n_syn);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const std::vector<double> col = minority.Column(j);
        EXPECT_GE(s(i, j), *std::min_element(col.begin(), col.end()));
        EXPECT_LE(s(i, j), *std::max_element(col.begin(), col.end()));
      }
    }
  }
}

TEST(Smote, NeverDuplicatesDistinctOriginals) {
  Rng rng(5);
  Matrix minority(20, 2);
  for (double& v : minority.mutable_data()) v = rng.Normal();
  const Matrix s = Smote(minority, 500, 5, 1);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t r = 0; r < minority.rows(); ++r) {
      EXPECT_FALSE(s(i, 0) == minority(r, 0) && s(i, 1) == minority(r, 1));
    }
  }
}

TEST(Smote, BinaryColumnsStayBinary) {
  const Matrix minority = Matrix::FromRows({{0, 0.2}, {1, 0.4}, {1, 0.9}, {0, 0.5}});
  const Matrix s = Smote(minority, 100, 3, 2, {true, false});
  for (std::size_t i = 0; i < s.rows(); ++i) {
    EXPECT_TRUE(s(i, 0) == 0.0 || s(i, 0) == 1.0);
  }
}

TEST(Smote, DeterministicAndErrors) {
  const Matrix minority = Matrix::FromRows({{0}, {1}, {3}});
  EXPECT_EQ(Smote(minority, 10, 2, 4), Smote(minority, 10, 2, 4));
  EXPECT_THROW(Smote(Matrix::FromRows({{1}}), 5, 1, 1), DataError);
  EXPECT_THROW(Smote(minority, 5, 0, 1), InvalidArgumentError);
  EXPECT_EQ(Smote(minority, 5, 50, 1).rows(), 5u);
}

TEST(Smote, BalancingEqualizesClasses) {
  Matrix x(30, 1);
  std::vector<int> y(30, 0);
  for (std::size_t i = 0; i < 30; ++i) x(i, 0) = static_cast<double>(i);
  for (std::size_t i = 0; i < 6; ++i) y[i] = 1;
  const BalancedData b = BalanceWithSmote(x, y, 5, 1);
  EXPECT_EQ(b.synthetic_rows, 18u);
  EXPECT_EQ(std::count(b.y.begin(), b.y.end(), 1), std::count(b.y.begin(), b.y.end(), 0));
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(b.x(i, 0), x(i, 0));
}

std::vector<int> Labels(std::size_t n, std::size_t positives) {
  std::vector<int> y(n, 0);
  for (std::size_t i = 0; i < positives; ++i) y[i * (n / positives)] = 1;
  return y;
}

TEST(Folds, DivisibleCase) {
  const std::vector<int> y = Labels(100, 20);
  const FoldPlan plan = StratifiedKFold(y, 5, 3);
  for (const auto& fold : plan.folds) {
    int positives = 0;
    for (const std::size_t r : fold) positives += y[r];
    EXPECT_EQ(positives, 4);
  }
}

TEST(Folds, UnevenPositives) {
  const std::vector<int> y = {1, 1, 1, 0, 0, 0, 0};
  const FoldPlan plan = StratifiedKFold(y, 2, 1);
  std::multiset<int> counts;
  for (const auto& fold : plan.folds) {
    int positives = 0;
    for (const std::size_t r : fold) positives += y[r];
    counts.insert(positives);
  }
  EXPECT_EQ(counts, (std::multiset<int>{1, 2}));
}

TEST(Folds, PartitionBalanceDeterminism) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 40 + rng.UniformIndex(300);
    std::vector<int> y(n);
    for (auto& v : y) v = rng.Bernoulli(0.25) ? 1 : 0;
    for (std::size_t i = 0; i < 10; ++i) y[i] = i % 2;
    const int k = 2 + static_cast<int>(rng.UniformIndex(4));
    const FoldPlan plan = StratifiedKFold(y, k, trial);
    std::vector<std::size_t> all;
    int lo = 1 << 30, hi = 0;
    for (const auto& fold : plan.folds) {
      all.insert(all.end(), fold.begin(), fold.end());
      int positives = 0;
      for (const std::size_t r : fold) positives += y[r];
      lo = std::min(lo, positives);
      hi = std::max(hi, positives);
      EXPECT_TRUE(std::is_sorted(fold.begin(), fold.end()));
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(n);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    EXPECT_EQ(all, expected);
    EXPECT_LE(hi - lo, 1);
    EXPECT_EQ(StratifiedKFold(y, k, trial), plan);
  }
}

TEST(Folds, ErrorsAndTextRoundTrip) {
  EXPECT_THROW(StratifiedKFold(std::vector<int>{1, 0, 0, 0}, 2, 1), DataError);
  EXPECT_THROW(StratifiedKFold(Labels(20, 5), 1, 1), InvalidArgumentError);
  const FoldPlan plan = StratifiedKFold(Labels(50, 10), 5, 9);
  std::stringstream text;
  WriteFoldPlan(text, plan);
  EXPECT_EQ(ReadFoldPlan(text), plan);
}

Recipe BasicRecipe(const dataio::Frame& f) {
  Recipe r;
  r.preprocess.imputer = preprocess::ImputerKind::kMedianMode;
  r.features = f.FeatureNames();
  r.family = models::Family::kLogistic;
  return r;
}

std::string Hash(const dataio::Frame& f, const std::vector<std::size_t>& rows) {
  std::ostringstream out;
  dataio::WriteCsv(f.SelectRows(rows), out);
  return std::to_string(Fnv1a64(out.str()));
}

TEST(Cv, HeldOutRowsUntouchedAndCountsPreserved) {
  const dataio::Frame f = testing::SignalAndNoise(200, 2, 3.0, 4);
  const FoldPlan plan = StratifiedKFold(f.Labels(), 5, 1);
  std::vector<std::string> before;
  for (const auto& fold : plan.folds) before.push_back(Hash(f, fold));
  const std::vector<PreparedFold> prepared = PrepareFolds(f, plan, BasicRecipe(f), 1);
  const CvResult r = EvaluatePreparedFolds(prepared, plan, BasicRecipe(f), 1);
  ASSERT_EQ(r.folds.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(Hash(f, plan.folds[k]), before[k]);
    EXPECT_EQ(prepared[k].heldout.n_rows(), plan.folds[k].size());
    EXPECT_EQ(r.folds[k].n, plan.folds[k].size());
    std::set<std::size_t> fit(prepared[k].fit_row_ids.begin(), prepared[k].fit_row_ids.end());
    for (const std::size_t id : plan.folds[k]) EXPECT_EQ(fit.count(id), 0u);
  }
}

TEST(Cv, FittingOnHeldOutRowsIsALeak) {
  const dataio::Frame f = testing::SignalAndNoise(100, 1, 2.0, 4);
  const FoldPlan plan = StratifiedKFold(f.Labels(), 3, 1);
  Recipe recipe = BasicRecipe(f);
  recipe.fit_scope = FitScope::kAllRows;
  EXPECT_THROW(PrepareFolds(f, plan, recipe, 1), LeakageError);
}

TEST(Cv, ConstantClassifierGivesHalf) {
  const dataio::Frame f = testing::SignalAndNoise(120, 1, 2.0, 6);
  const FoldPlan plan = StratifiedKFold(f.Labels(), 4, 1);
  Recipe recipe = BasicRecipe(f);
  recipe.family = models::Family::kGbdt;
  recipe.hyperparams = {{"n_iters", 0}};
  const CvResult r = CvTrainEval(f, plan, recipe, 1);
  for (const auto& report : r.folds) EXPECT_EQ(report.auroc, 0.5);
}

TEST(Cv, StrongModelOnSeparableData) {
  Rng rng(2);
  std::vector<double> a(300), b(300);
  std::vector<int> y(300);
  for (std::size_t i = 0; i < 300; ++i) {
    a[i] = rng.Normal();
    b[i] = rng.Normal();
    y[i] = a[i] - b[i] > 0 ? 1 : 0;
  }
  const dataio::Frame f = testing::MakeFrame({{"a", a}, {"b", b}}, y);
  const FoldPlan plan = StratifiedKFold(f.Labels(), 5, 1);
  const CvResult r = CvTrainEval(f, plan, BasicRecipe(f), 1);
  for (const auto& report : r.folds) EXPECT_GE(report.auroc, 0.95);
  EXPECT_EQ(r.oof.size(), 300u);
}

TEST(Recipe, RawUnitPredictionsMatchManualScaling) {
  const dataio::Frame f = testing::SignalAndNoise(150, 2, 2.0, 1);
  const FittedRecipe fitted = FitRecipe(f, BasicRecipe(f), 3);
  EXPECT_FALSE(fitted.model.input_transform.empty());
  EXPECT_GT(fitted.synthetic_rows, 0u);
  const std::vector<double> p = PredictRecipe(fitted, f);
  const dataio::Frame prepared = fitted.preprocessor.Prepare(f);
  const std::vector<std::string> names = fitted.model.feature_order;
  const Matrix raw = prepared.ToMatrix(names);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(p[i], models::PredictOne(fitted.model, raw.Row(i)));
  }
}

}  // namespace
}  // namespace icurisk::balance
