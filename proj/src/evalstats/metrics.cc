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


#include "icurisk/evalstats/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/dataio/csv.h"

namespace icurisk::evalstats {
namespace {

double SafeRatio(double num, double den, const char* name,
                 std::vector<std::string>& undefined) {
  if (den > 0.0) return num / den;
  undefined.emplace_back(name);
  return 0.0;
}

// Continued fraction for the incomplete beta (modified Lentz).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double Auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw InvalidArgumentError("auroc: score and label lengths differ");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positives = 0.0;
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Ranks i+1..j+1 share their mean.
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) {
        positives += 1.0;
        rank_sum += midrank;
      }
    }
    i = j + 1;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw DataError("auroc needs both classes");
  }
  return (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

Interval BootstrapAurocCi(std::span<const double> scores,
                          std::span<const int> labels, int b, double alpha,
                          uint64_t seed) {
  if (b < 100) throw InvalidArgumentError("bootstrap needs at least 100 replicates");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgumentError("bootstrap alpha must be in (0, 1)");
  }
  const std::size_t n = scores.size();
  Auroc(scores, labels);  // validates both classes are present
  Rng rng(seed);
  std::vector<double> s(n);
  std::vector<int> y(n);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(b));
  while (stats.size() < static_cast<std::size_t>(b)) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = rng.UniformIndex(n);
      s[i] = scores[r];
      y[i] = labels[r];
      pos += static_cast<std::size_t>(y[i]);
    }
    if (pos == 0 || pos == n) continue;
    stats.push_back(Auroc(s, y));
  }
  std::sort(stats.begin(), stats.end());
  return {QuantileSorted(stats, alpha / 2.0), QuantileSorted(stats, 1.0 - alpha / 2.0)};
}

std::vector<RocPoint> RocCurve(std::span<const double> scores,
                               std::span<const int> labels) {
  Auroc(scores, labels);  // validates both classes are present
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double positives = 0.0;
  for (const int y : labels) positives += y;
  const double negatives = static_cast<double>(labels.size()) - positives;
  std::vector<RocPoint> curve = {{std::numeric_limits<double>::infinity(), 0.0, 0.0}};
  double tp = 0.0;
  double fp = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      (labels[order[i]] == 1 ? tp : fp) += 1.0;
    }
    curve.push_back({s, fp / negatives, tp / positives});
  }
  return curve;
}

void WriteRocCsv(std::ostream& out, std::span<const RocPoint> curve) {
  out << "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve) {
    out << (std::isinf(p.threshold) ? std::string("inf") : dataio::FormatDouble(p.threshold))
        << ',' << dataio::FormatDouble(p.fpr) << ',' << dataio::FormatDouble(p.tpr) << '\n';
  }
}

EvalReport ConfusionMetrics(std::span<const double> probs,
                            std::span<const int> labels, double threshold) {
  if (probs.size() != labels.size()) {
    throw InvalidArgumentError("confusion: score and label lengths differ");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgumentError("confusion: threshold must be in [0, 1]");
  }
  EvalReport r;
  r.threshold = threshold;
  r.n = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const bool predicted = probs[i] >= threshold;
    if (labels[i] == 1) {
      (predicted ? r.tp : r.fn)++;
    } else {
      (predicted ? r.fp : r.tn)++;
    }
  }
  const auto tp = static_cast<double>(r.tp);
  const auto fp = static_cast<double>(r.fp);
  const auto tn = static_cast<double>(r.tn);
  const auto fn = static_cast<double>(r.fn);
  r.accuracy = SafeRatio(tp + tn, tp + tn + fp + fn, "accuracy", r.undefined);
  r.prevalence = SafeRatio(tp + fn, tp + tn + fp + fn, "prevalence", r.undefined);
  r.sensitivity = SafeRatio(tp, tp + fn, "sensitivity", r.undefined);
  r.specificity = SafeRatio(tn, tn + fp, "specificity", r.undefined);
  r.ppv = SafeRatio(tp, tp + fp, "ppv", r.undefined);
  r.npv = SafeRatio(tn, tn + fn, "npv", r.undefined);
  r.f1 = SafeRatio(2.0 * r.ppv * r.sensitivity, r.ppv + r.sensitivity, "f1",
                   r.undefined);
  return r;
}

EvalReport Evaluate(std::span<const double> probs, std::span<const int> labels,
                    double threshold, const EvaluateOptions& options,
                    uint64_t seed) {
  EvalReport r = ConfusionMetrics(probs, labels, threshold);
  r.auroc = Auroc(probs, labels);
  const Interval ci =
      BootstrapAurocCi(probs, labels, options.bootstrap, options.alpha, seed);
  r.ci_low = std::min(ci.low, r.auroc);
  r.ci_high = std::max(ci.high, r.auroc);
  return r;
}

void WriteMetricsCsv(std::ostream& out, std::span<const ReportRow> rows) {
  using dataio::FormatDouble;
  out << "model,split,auroc,ci_low,ci_high,accuracy,f1,sensitivity,specificity,"
         "ppv,npv,threshold,n,prevalence\n";
  for (const ReportRow& row : rows) {
    const EvalReport& r = row.report;
    out << dataio::CsvEscape(row.name) << ',' << dataio::CsvEscape(row.split) << ','
        << FormatDouble(r.auroc) << ',' << FormatDouble(r.ci_low) << ','
        << FormatDouble(r.ci_high) << ',' << FormatDouble(r.accuracy) << ','
        << FormatDouble(r.f1) << ',' << FormatDouble(r.sensitivity) << ','
        << FormatDouble(r.specificity) << ',' << FormatDouble(r.ppv) << ','
        << FormatDouble(r.npv) << ',' << FormatDouble(r.threshold) << ',' << r.n
        << ',' << FormatDouble(r.prevalence) << '\n';
  }
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw InvalidArgumentError("incomplete beta needs a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTCdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgumentError("t distribution needs df > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * RegularizedIncompleteBeta(df / 2.0, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw InvalidArgumentError("welch t-test needs at least 2 values per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = Mean(a);
  const double mb = Mean(b);
  const double va = SampleVariance(a) / na;
  const double vb = SampleVariance(b) / nb;
  const double se2 = va + vb;
  TTestResult r;
  if (!(se2 > 0.0)) {
    if (ma == mb) return {0.0, na + nb - 2.0, 1.0};
    r.t = ma > mb ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
    r.df = na + nb - 2.0;
    r.p = std::numeric_limits<double>::min();
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  // Two-sided tail: I_{df/(df+t^2)}(df/2, 1/2).
  r.p = RegularizedIncompleteBeta(r.df / 2.0, 0.5, r.df / (r.df + r.t * r.t));
  r.p = std::clamp(r.p, std::numeric_limits<double>::min(), 1.0);
  return r;
}

}  // namespace icurisk::evalstats
