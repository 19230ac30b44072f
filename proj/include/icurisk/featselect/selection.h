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


#ifndef ICURISK_FEATSELECT_SELECTION_H_
#define ICURISK_FEATSELECT_SELECTION_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icurisk/dataio/frame.h"

namespace icurisk::featselect {

enum class RankingStage { kAnova, kGini };

std::string_view RankingStageName(RankingStage stage);

struct RankedFeature {
  std::string name;
  double score = 0.0;
  // Set when the score could not be computed normally (see AnovaF).
  bool flagged = false;
};

// Features ordered by non-increasing score, ties by name.
struct FeatureRanking {
  RankingStage stage = RankingStage::kAnova;
  std::vector<RankedFeature> features;

  std::vector<std::string> Names() const;
  std::vector<std::string> TopNames(std::size_t k) const;
};

struct AnovaResult {
  double f = 0.0;
  // A group with fewer than two values (score 0), or zero within-group
  // variance with distinct means (score +inf).
  bool flagged = false;
};

// One-way ANOVA F statistic for two groups.
AnovaResult AnovaF(std::span<const double> group0, std::span<const double> group1);
// Groups by 0/1 label; missing cells are skipped.
AnovaResult AnovaF(const dataio::Column& column, std::span<const int> labels);

// Top k of `candidates` (all non-label columns when empty) by ANOVA F.
FeatureRanking SelectKBest(const dataio::Frame& frame, std::size_t k,
                           std::span<const std::string> candidates = {});

struct GiniOptions {
  int num_trees = 200;
  int max_depth = 0;
  double min_leaf = 5.0;
};

// Mean decrease in Gini impurity from a classification forest, each split
// weighted by the fraction of the tree's sample reaching it, normalized to sum
// to 1. Candidate sampling keys derive from feature names, so permuting the
// candidate order permutes the scores identically.
FeatureRanking GiniImportance(const dataio::Frame& frame,
                              std::span<const std::string> candidates,
                              uint64_t seed, const GiniOptions& options = {});

struct TwoStageResult {
  FeatureRanking anova;  // the k1 survivors
  FeatureRanking gini;   // importance over the k1 survivors
  std::vector<std::string> selected;  // top k2 by importance
};

TwoStageResult TwoStageSelect(const dataio::Frame& frame, std::size_t k1,
                              std::size_t k2, uint64_t seed,
                              std::span<const std::string> candidates = {},
                              const GiniOptions& options = {});

// CSV with columns feature,stage,score,rank (rank starts at 1).
void WriteRankingCsv(std::ostream& out, std::span<const FeatureRanking> rankings);

}  // namespace icurisk::featselect

#endif  // ICURISK_FEATSELECT_SELECTION_H_
