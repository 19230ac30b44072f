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


#ifndef ICURISK_EVALSTATS_METRICS_H_
#define ICURISK_EVALSTATS_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace icurisk::evalstats {

// Probability that a random positive outscores a random negative, ties
// counted one half; computed from midranks.
double Auroc(std::span<const double> scores, std::span<const int> labels);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Percentile interval of AUROC over b row resamples; resamples with a single
// class are redrawn.
Interval BootstrapAurocCi(std::span<const double> scores,
                          std::span<const int> labels, int b, double alpha,
                          uint64_t seed);

struct EvalReport {
  double auroc = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double ppv = 0.0;
  double npv = 0.0;
  double threshold = 0.5;
  std::size_t n = 0;
  double prevalence = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  // Names of rates whose denominator was zero (reported as 0).
  std::vector<std::string> undefined;
};

// Threshold-dependent fields only; predicts positive iff prob >= threshold.
EvalReport ConfusionMetrics(std::span<const double> probs,
                            std::span<const int> labels, double threshold);

struct RocPoint {
  double threshold = 0.0;  // predict positive when score >= threshold
  double fpr = 0.0;
  double tpr = 0.0;
};

// Empirical ROC over distinct scores, from (0, 0) at threshold +inf to
// (1, 1) at the smallest score.
std::vector<RocPoint> RocCurve(std::span<const double> scores,
                               std::span<const int> labels);
void WriteRocCsv(std::ostream& out, std::span<const RocPoint> curve);

struct EvaluateOptions {
  int bootstrap = 2000;
  double alpha = 0.05;
};

// Confusion metrics plus AUROC and its bootstrap interval. The interval is
// widened to include the point estimate when resampling places it outside.
EvalReport Evaluate(std::span<const double> probs, std::span<const int> labels,
                    double threshold, const EvaluateOptions& options,
                    uint64_t seed);

struct ReportRow {
  std::string name;
  std::string split;
  EvalReport report;
};

// CSV header and rows: model,split,auroc,ci_low,ci_high,accuracy,f1,
// sensitivity,specificity,ppv,npv,threshold,n,prevalence.
void WriteMetricsCsv(std::ostream& out, std::span<const ReportRow> rows);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

// Two-sided Welch t-test.
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b);

// Regularized incomplete beta I_x(a, b).
double RegularizedIncompleteBeta(double a, double b, double x);
// Student t cumulative distribution.
double StudentTCdf(double t, double df);

}  // namespace icurisk::evalstats

#endif  // ICURISK_EVALSTATS_METRICS_H_
