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


#include "icurisk/featselect/selection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/trees/forest.h"

namespace icurisk::featselect {
namespace {

void SortRanking(std::vector<RankedFeature>& features) {
  std::sort(features.begin(), features.end(),
            [](const RankedFeature& a, const RankedFeature& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.name < b.name;
            });
}

std::vector<std::string> ResolveCandidates(const dataio::Frame& frame,
                                           std::span<const std::string> candidates) {
  if (candidates.empty()) return frame.FeatureNames();
  for (const std::string& name : candidates) {
    if (!frame.FindColumn(name)) {
      throw NotFoundError("unknown feature '" + name + "'");
    }
    if (frame.has_label() && name == frame.label_name()) {
      throw InvalidArgumentError("label column cannot be a candidate feature");
    }
  }
  return {candidates.begin(), candidates.end()};
}

double SumSq(std::span<const double> v, double mean) {
  double s = 0.0;
  for (const double x : v) s += (x - mean) * (x - mean);
  return s;
}

}  // namespace

std::string_view RankingStageName(RankingStage stage) {
  return stage == RankingStage::kAnova ? "anova" : "gini";
}

std::vector<std::string> FeatureRanking::Names() const {
  return TopNames(features.size());
}

std::vector<std::string> FeatureRanking::TopNames(std::size_t k) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, features.size()); ++i) {
    out.push_back(features[i].name);
  }
  return out;
}

AnovaResult AnovaF(std::span<const double> group0, std::span<const double> group1) {
  if (group0.size() < 2 || group1.size() < 2) return {0.0, true};
  const double n0 = static_cast<double>(group0.size());
  const double n1 = static_cast<double>(group1.size());
  double s0 = 0.0;
  double s1 = 0.0;
  for (const double x : group0) s0 += x;
  for (const double x : group1) s1 += x;
  const double m0 = s0 / n0;
  const double m1 = s1 / n1;
  const double grand = (s0 + s1) / (n0 + n1);
  const double ssb = n0 * (m0 - grand) * (m0 - grand) + n1 * (m1 - grand) * (m1 - grand);
  const double ssw = SumSq(group0, m0) + SumSq(group1, m1);
  const double msb = ssb;  // two groups: one degree of freedom
  const double msw = ssw / (n0 + n1 - 2.0);
  if (m0 == m1) return {0.0, false};
  if (!(msw > 0.0)) return {std::numeric_limits<double>::infinity(), true};
  return {msb / msw, false};
}

AnovaResult AnovaF(const dataio::Column& column, std::span<const int> labels) {
  if (labels.size() != column.size()) {
    throw InvalidArgumentError("label length does not match column length");
  }
  std::vector<double> g0;
  std::vector<double> g1;
  for (std::size_t r = 0; r < column.size(); ++r) {
    if (column.is_missing(r)) continue;
    (labels[r] == 1 ? g1 : g0).push_back(column.values[r]);
  }
  return AnovaF(g0, g1);
}

FeatureRanking SelectKBest(const dataio::Frame& frame, std::size_t k,
                           std::span<const std::string> candidates) {
  if (k == 0) throw InvalidArgumentError("select_k_best: k must be >= 1");
  if (!frame.has_label()) throw DataError("select_k_best needs a labeled frame");
  const std::vector<std::string> names = ResolveCandidates(frame, candidates);
  if (k > names.size()) {
    throw InvalidArgumentError("select_k_best: k exceeds the candidate count");
  }
  const std::vector<int> labels = frame.Labels();
  FeatureRanking ranking;
  ranking.stage = RankingStage::kAnova;
  for (const std::string& name : names) {
    const AnovaResult r = AnovaF(frame.column(name), labels);
    ranking.features.push_back({name, r.f, r.flagged});
  }
  SortRanking(ranking.features);
  ranking.features.resize(k);
  return ranking;
}

FeatureRanking GiniImportance(const dataio::Frame& frame,
                              std::span<const std::string> candidates,
                              uint64_t seed, const GiniOptions& options) {
  if (!frame.has_label()) throw DataError("gini importance needs a labeled frame");
  if (frame.n_rows() < 2) throw DataError("gini importance needs at least 2 rows");
  const std::vector<std::string> names = ResolveCandidates(frame, candidates);
  const std::vector<int> labels = frame.Labels();
  const std::size_t positives = frame.CountPositive();
  if (positives == 0 || positives == frame.n_rows()) {
    throw DataError("gini importance needs both classes");
  }
  const Matrix x = frame.ToMatrix(names);

  trees::ForestOptions forest;
  forest.num_trees = options.num_trees;
  forest.max_depth = options.max_depth;
  forest.min_leaf = options.min_leaf;
  forest.features_per_split = -1;
  forest.sampling = trees::RowSampling::kBootstrap;
  for (const std::string& name : names) forest.feature_keys.push_back(Fnv1a64(name));
  const auto model = trees::ClassificationForest::Fit(x, labels, 2, forest, seed);
  const std::vector<double> importance = model.GiniImportance();

  FeatureRanking ranking;
  ranking.stage = RankingStage::kGini;
  for (std::size_t j = 0; j < names.size(); ++j) {
    ranking.features.push_back({names[j], importance[j], false});
  }
  SortRanking(ranking.features);
  return ranking;
}

TwoStageResult TwoStageSelect(const dataio::Frame& frame, std::size_t k1,
                              std::size_t k2, uint64_t seed,
                              std::span<const std::string> candidates,
                              const GiniOptions& options) {
  if (k2 == 0 || k2 > k1) {
    throw InvalidArgumentError("two-stage selection needs 1 <= k2 <= k1");
  }
  TwoStageResult result;
  result.anova = SelectKBest(frame, k1, candidates);
  const std::vector<std::string> survivors = result.anova.Names();
  result.gini = GiniImportance(frame, survivors, seed, options);
  result.selected = result.gini.TopNames(k2);
  return result;
}

void WriteRankingCsv(std::ostream& out, std::span<const FeatureRanking> rankings) {
  out << "feature,stage,score,rank\n";
  for (const FeatureRanking& ranking : rankings) {
    for (std::size_t i = 0; i < ranking.features.size(); ++i) {
      const RankedFeature& f = ranking.features[i];
      out << dataio::CsvEscape(f.name) << ',' << RankingStageName(ranking.stage)
          << ',' << dataio::FormatDouble(f.score) << ',' << (i + 1) << '\n';
    }
  }
}

}  // namespace icurisk::featselect
