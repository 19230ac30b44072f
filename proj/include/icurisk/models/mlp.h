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


#ifndef ICURISK_MODELS_MLP_H_
#define ICURISK_MODELS_MLP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "icurisk/common/matrix.h"
#include "icurisk/models/artifact.h"

namespace icurisk::models {

struct MlpOptions {
  int hidden_units = 16;
  double learning_rate = 1e-3;
  int batch_size = 32;
  int epochs = 200;
  double alpha = 1e-4;  // L2 penalty on weights
};

// Flat parameter layout: w1 (hidden x d, row-major), b1, w2, b2.
std::size_t MlpParamCount(std::size_t inputs, std::size_t hidden);
MlpParams UnpackMlp(std::span<const double> theta, std::size_t inputs,
                    std::size_t hidden);
std::vector<double> PackMlp(const MlpParams& params);

// Mean binary cross-entropy over the rows of x plus alpha * ||W||^2 / (2 n)
// (weights only, biases unpenalized). Writes the backpropagated gradient when
// `grad` is set.
double MlpObjective(const Matrix& x, std::span<const int> y,
                    std::span<const double> theta, std::size_t hidden,
                    double alpha, std::vector<double>* grad);

// One ReLU hidden layer and a sigmoid output trained with Adam on shuffled
// mini-batches. A non-finite loss stops training and flags the artifact.
ModelArtifact FitMlp(const Matrix& x, std::span<const int> y,
                     const MlpOptions& options, uint64_t seed);

}  // namespace icurisk::models

#endif  // ICURISK_MODELS_MLP_H_
