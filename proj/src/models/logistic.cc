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


#include "icurisk/models/logistic.h"

#include <cmath>
#include <string>

#include "icurisk/common/error.h"
#include "icurisk/common/stats.h"

namespace icurisk::models {
namespace {

double LogLoss(const Matrix& x, std::span<const int> y,
               std::span<const double> theta, std::vector<double>* grad) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  if (grad) grad->assign(d + 1, 0.0);
  double loss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = x.Row(r);
    double z = theta[d];
    for (std::size_t j = 0; j < d; ++j) z += theta[j] * row[j];
    loss += Softplus(z) - y[r] * z;
    if (grad) {
      const double residual = Sigmoid(z) - y[r];
      for (std::size_t j = 0; j < d; ++j) (*grad)[j] += residual * row[j];
      (*grad)[d] += residual;
    }
  }
  if (grad) {
    for (double& g : *grad) g *= inv_n;
  }
  return loss * inv_n;
}

double L2Part(std::span<const double> theta, std::size_t d, double k) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += theta[j] * theta[j];
  return 0.5 * k * s;
}

double L1Part(std::span<const double> theta, std::size_t d, double k) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += std::abs(theta[j]);
  return k * s;
}

}  // namespace

std::string_view PenaltyName(Penalty penalty) {
  return penalty == Penalty::kL1 ? "l1" : "l2";
}

Penalty ParsePenalty(std::string_view name) {
  if (name == "l1") return Penalty::kL1;
  if (name == "l2") return Penalty::kL2;
  throw ConfigError("unknown penalty '" + std::string(name) + "'");
}

double LogisticObjective(const Matrix& x, std::span<const int> y,
                         std::span<const double> theta, Penalty penalty, double c,
                         std::vector<double>* grad) {
  if (theta.size() != x.cols() + 1) {
    throw InvalidArgumentError("theta must have cols + 1 entries");
  }
  const std::size_t d = x.cols();
  const double k = 1.0 / (c * static_cast<double>(x.rows()));
  double value = LogLoss(x, y, theta, grad);
  if (penalty == Penalty::kL2) {
    value += L2Part(theta, d, k);
    if (grad) {
      for (std::size_t j = 0; j < d; ++j) (*grad)[j] += k * theta[j];
    }
  } else {
    value += L1Part(theta, d, k);
    if (grad) {
      for (std::size_t j = 0; j < d; ++j) {
        (*grad)[j] += theta[j] > 0 ? k : (theta[j] < 0 ? -k : 0.0);
      }
    }
  }
  return value;
}

ModelArtifact FitLogistic(const Matrix& x, std::span<const int> y,
                          const LogisticOptions& options) {
  CheckTrainingInputs(x, y);
  if (!(options.c > 0.0)) throw InvalidArgumentError("logistic: c must be > 0");
  if (options.max_iter < 1) throw InvalidArgumentError("logistic: max_iter < 1");
  const std::size_t d = x.cols();
  const double strength = 1.0 / (options.c * static_cast<double>(x.rows()));
  const double l1 = options.penalty == Penalty::kL1 ? strength : 0.0;
  const double l2 = options.penalty == Penalty::kL2 ? strength : 0.0;
  // Both penalties go through the proximal step; the intercept is never
  // penalized.
  auto prox = [&](std::vector<double>& theta, double step) {
    const double k1 = step * l1;
    const double shrink = 1.0 / (1.0 + step * l2);
    for (std::size_t j = 0; j < d; ++j) {
      const double v = theta[j];
      theta[j] = (v > k1 ? v - k1 : (v < -k1 ? v + k1 : 0.0)) * shrink;
    }
  };
  auto penalty_value = [&](const std::vector<double>& theta) {
    return L1Part(theta, d, l1) + L2Part(theta, d, l2);
  };
  auto full = [&](const std::vector<double>& theta) {
    return LogLoss(x, y, theta, nullptr) + penalty_value(theta);
  };

  std::vector<double> current(d + 1, 0.0);
  std::vector<double> extrapolated = current;
  std::vector<double> next(d + 1);
  std::vector<double> grad;
  double current_value = full(current);
  double step = 1.0;
  double momentum = 1.0;
  bool converged = false;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    const double f_y = LogLoss(x, y, extrapolated, &grad);
    double f_next = 0.0;
    double diff_sq = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j <= d; ++j) next[j] = extrapolated[j] - step * grad[j];
      prox(next, step);
      double linear = 0.0;
      diff_sq = 0.0;
      for (std::size_t j = 0; j <= d; ++j) {
        const double delta = next[j] - extrapolated[j];
        linear += grad[j] * delta;
        diff_sq += delta * delta;
      }
      f_next = LogLoss(x, y, next, nullptr);
      if (f_next <= f_y + linear + diff_sq / (2.0 * step) + 1e-15) break;
      step *= 0.5;
    }
    if (std::sqrt(diff_sq) / step < options.tol) {
      current = next;
      converged = true;
      ++iter;
      break;
    }
    const double next_value = f_next + penalty_value(next);
    if (next_value > current_value && momentum > 1.0) {
      // Restart momentum from the last accepted point.
      extrapolated = current;
      momentum = 1.0;
      continue;
    }
    const double next_momentum =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / next_momentum;
    for (std::size_t j = 0; j <= d; ++j) {
      extrapolated[j] = next[j] + beta * (next[j] - current[j]);
    }
    current = next;
    current_value = next_value;
    momentum = next_momentum;
  }

  ModelArtifact model;
  model.family = Family::kLogistic;
  model.feature_order = DefaultFeatureNames(d);
  LogisticParams params;
  params.weights.assign(current.begin(), current.begin() + static_cast<long>(d));
  params.intercept = current[d];
  model.params = std::move(params);
  model.meta.converged = converged;
  model.meta.degenerate = IsSingleClass(y);
  model.meta.iterations = iter;
  model.meta.hyperparams = {{"penalty", std::string(PenaltyName(options.penalty))},
                            {"c", options.c},
                            {"tol", options.tol},
                            {"max_iter", options.max_iter}};
  return model;
}

}  // namespace icurisk::models
