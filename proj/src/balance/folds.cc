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


#include "icurisk/balance/folds.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"

namespace icurisk::balance {

std::size_t FoldPlan::num_rows() const {
  std::size_t n = 0;
  for (const auto& f : folds) n += f.size();
  return n;
}

std::vector<std::size_t> FoldPlan::TrainingRows(int f) const {
  std::vector<std::size_t> rows;
  for (int g = 0; g < k; ++g) {
    if (g == f) continue;
    rows.insert(rows.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

FoldPlan StratifiedKFold(std::span<const int> labels, int k, uint64_t seed) {
  if (k < 2) throw InvalidArgumentError("k-fold needs k >= 2");
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(static_cast<std::size_t>(k));
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DataError("labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
  }
  Rng rng(seed);
  std::size_t next = 0;
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw DataError("class " + std::to_string(c) + " has " +
                      std::to_string(by_class[c].size()) + " rows, fewer than k=" +
                      std::to_string(k));
    }
    rng.Shuffle(by_class[c]);
    for (const std::size_t row : by_class[c]) {
      plan.folds[next].push_back(row);
      next = (next + 1) % static_cast<std::size_t>(k);
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

void WriteFoldPlan(std::ostream& out, const FoldPlan& plan) {
  out << "k " << plan.k << "\nseed " << plan.seed << '\n';
  for (int f = 0; f < plan.k; ++f) {
    out << "fold " << f << ':';
    for (const std::size_t r : plan.folds[f]) out << ' ' << r;
    out << '\n';
  }
}

FoldPlan ReadFoldPlan(std::istream& in) {
  FoldPlan plan;
  std::string word;
  if (!(in >> word >> plan.k) || word != "k" || plan.k < 2) {
    throw DataError("fold plan: expected 'k <count>'");
  }
  if (!(in >> word >> plan.seed) || word != "seed") {
    throw DataError("fold plan: expected 'seed <value>'");
  }
  std::string line;
  std::getline(in, line);
  for (int f = 0; f < plan.k; ++f) {
    if (!std::getline(in, line)) throw DataError("fold plan: missing fold line");
    const std::string prefix = "fold " + std::to_string(f) + ":";
    if (line.rfind(prefix, 0) != 0) {
      throw DataError("fold plan: expected '" + prefix + "'");
    }
    std::istringstream rows(line.substr(prefix.size()));
    std::vector<std::size_t> fold;
    std::size_t r = 0;
    while (rows >> r) fold.push_back(r);
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

}  // namespace icurisk::balance
