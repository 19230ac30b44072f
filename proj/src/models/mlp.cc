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


#include "icurisk/models/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icurisk/common/error.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"

namespace icurisk::models {
namespace {

// Loss and gradient over the given rows of x; the penalty is scaled by
// 1 / penalty_rows.
double BatchObjective(const Matrix& x, std::span<const int> y,
                      std::span<const std::size_t> rows, const MlpParams& p,
                      double alpha, double penalty_rows, std::vector<double>* grad) {
  const std::size_t d = x.cols();
  const std::size_t hidden = p.hidden;
  const double inv_m = 1.0 / static_cast<double>(rows.size());
  std::vector<double> act(hidden);
  double loss = 0.0;
  double* g_w1 = nullptr;
  double* g_b1 = nullptr;
  double* g_w2 = nullptr;
  double* g_b2 = nullptr;
  if (grad) {
    grad->assign(MlpParamCount(d, hidden), 0.0);
    g_w1 = grad->data();
    g_b1 = g_w1 + hidden * d;
    g_w2 = g_b1 + hidden;
    g_b2 = g_w2 + hidden;
  }
  for (const std::size_t r : rows) {
    const auto row = x.Row(r);
    double z = p.b2;
    for (std::size_t h = 0; h < hidden; ++h) {
      double a = p.b1[h];
      const double* w = p.w1.data() + h * d;
      for (std::size_t j = 0; j < d; ++j) a += w[j] * row[j];
      act[h] = a;
      if (a > 0.0) z += p.w2[h] * a;
    }
    loss += Softplus(z) - y[r] * z;
    if (!grad) continue;
    const double dz = (Sigmoid(z) - y[r]) * inv_m;
    *g_b2 += dz;
    for (std::size_t h = 0; h < hidden; ++h) {
      if (act[h] <= 0.0) continue;
      g_w2[h] += dz * act[h];
      const double da = dz * p.w2[h];
      g_b1[h] += da;
      double* gw = g_w1 + h * d;
      for (std::size_t j = 0; j < d; ++j) gw[j] += da * row[j];
    }
  }
  loss *= inv_m;
  const double k = alpha / penalty_rows;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.w1.size(); ++i) {
    sq += p.w1[i] * p.w1[i];
    if (grad) g_w1[i] += k * p.w1[i];
  }
  for (std::size_t h = 0; h < hidden; ++h) {
    sq += p.w2[h] * p.w2[h];
    if (grad) g_w2[h] += k * p.w2[h];
  }
  return loss + 0.5 * k * sq;
}

}  // namespace

std::size_t MlpParamCount(std::size_t inputs, std::size_t hidden) {
  return hidden * inputs + 2 * hidden + 1;
}

MlpParams UnpackMlp(std::span<const double> theta, std::size_t inputs,
                    std::size_t hidden) {
  if (theta.size() != MlpParamCount(inputs, hidden)) {
    throw InvalidArgumentError("mlp: parameter vector has the wrong length");
  }
  MlpParams p;
  p.hidden = hidden;
  auto it = theta.begin();
  p.w1.assign(it, it + static_cast<long>(hidden * inputs));
  it += static_cast<long>(hidden * inputs);
  p.b1.assign(it, it + static_cast<long>(hidden));
  it += static_cast<long>(hidden);
  p.w2.assign(it, it + static_cast<long>(hidden));
  it += static_cast<long>(hidden);
  p.b2 = *it;
  return p;
}

std::vector<double> PackMlp(const MlpParams& p) {
  std::vector<double> theta;
  theta.reserve(p.w1.size() + p.b1.size() + p.w2.size() + 1);
  theta.insert(theta.end(), p.w1.begin(), p.w1.end());
  theta.insert(theta.end(), p.b1.begin(), p.b1.end());
  theta.insert(theta.end(), p.w2.begin(), p.w2.end());
  theta.push_back(p.b2);
  return theta;
}

double MlpObjective(const Matrix& x, std::span<const int> y,
                    std::span<const double> theta, std::size_t hidden,
                    double alpha, std::vector<double>* grad) {
  if (hidden == 0) throw InvalidArgumentError("mlp: hidden units must be >= 1");
  const MlpParams p = UnpackMlp(theta, x.cols(), hidden);
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return BatchObjective(x, y, rows, p, alpha, static_cast<double>(x.rows()), grad);
}

ModelArtifact FitMlp(const Matrix& x, std::span<const int> y,
                     const MlpOptions& options, uint64_t seed) {
  if (options.hidden_units < 1) {
    throw InvalidArgumentError("mlp: hidden_units must be >= 1");
  }
  if (!(options.learning_rate > 0.0)) {
    throw InvalidArgumentError("mlp: learning_rate must be > 0");
  }
  if (options.batch_size < 1 || options.epochs < 0) {
    throw InvalidArgumentError("mlp: batch_size must be >= 1 and epochs >= 0");
  }
  CheckTrainingInputs(x, y);
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const auto hidden = static_cast<std::size_t>(options.hidden_units);

  Rng rng(seed);
  MlpParams init;
  init.hidden = hidden;
  const double a1 = std::sqrt(6.0 / static_cast<double>(d + hidden));
  const double a2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  init.w1.resize(hidden * d);
  for (double& w : init.w1) w = a1 * (2.0 * rng.Uniform() - 1.0);
  init.b1.resize(hidden);
  for (double& b : init.b1) b = a1 * (2.0 * rng.Uniform() - 1.0);
  init.w2.resize(hidden);
  for (double& w : init.w2) w = a2 * (2.0 * rng.Uniform() - 1.0);
  init.b2 = a2 * (2.0 * rng.Uniform() - 1.0);

  std::vector<double> theta = PackMlp(init);
  std::vector<double> m(theta.size(), 0.0);
  std::vector<double> v(theta.size(), 0.0);
  std::vector<double> grad;
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  double beta1_t = 1.0;
  double beta2_t = 1.0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::min<std::size_t>(
      static_cast<std::size_t>(options.batch_size), n);
  bool diverged = false;
  int epoch = 0;
  for (; epoch < options.epochs && !diverged; ++epoch) {
    rng.Shuffle(order);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      const MlpParams p = UnpackMlp(theta, d, hidden);
      const double loss = BatchObjective(x, y, rows, p, options.alpha,
                                         static_cast<double>(n), &grad);
      if (!std::isfinite(loss)) {
        diverged = true;
        break;
      }
      beta1_t *= kBeta1;
      beta2_t *= kBeta2;
      for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
        v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
        const double m_hat = m[i] / (1.0 - beta1_t);
        const double v_hat = v[i] / (1.0 - beta2_t);
        theta[i] -= options.learning_rate * m_hat / (std::sqrt(v_hat) + kEps);
      }
    }
  }
  for (const double t : theta) {
    if (!std::isfinite(t)) diverged = true;
  }

  ModelArtifact model;
  model.family = Family::kMlp;
  model.feature_order = DefaultFeatureNames(d);
  model.params = UnpackMlp(theta, d, hidden);
  model.meta.seed = seed;
  model.meta.iterations = epoch;
  model.meta.diverged = diverged;
  model.meta.converged = !diverged;
  model.meta.degenerate = IsSingleClass(y);
  model.meta.hyperparams = {{"hidden_units", options.hidden_units},
                            {"learning_rate", options.learning_rate},
                            {"batch_size", options.batch_size},
                            {"epochs", options.epochs},
                            {"alpha", options.alpha}};
  return model;
}

}  // namespace icurisk::models
