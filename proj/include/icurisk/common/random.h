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


#ifndef ICURISK_COMMON_RANDOM_H_
#define ICURISK_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace icurisk {

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes, uint64_t seed = 14695981039346656037ULL);

// One round of the splitmix64 finalizer; a strong 64-bit mixer.
uint64_t Mix64(uint64_t x);

// Seed for a named stage derived from the master seed. Every stochastic stage
// of a run draws its own stream from here so that adding or reordering stages
// never shifts another stage's randomness.
uint64_t DeriveSeed(uint64_t master, std::string_view stage);
uint64_t DeriveSeed(uint64_t master, uint64_t index);

// Random source with distribution helpers implemented here rather than
// through <random> distributions, whose output is library-specific. Results
// are therefore identical across standard library implementations.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform();
  // Uniform in the open interval (0, 1).
  double UniformOpen();
  // Uniform integer in [0, n). Requires n > 0.
  std::size_t UniformIndex(std::size_t n);
  double Normal();
  double Normal(double mean, double sd) { return mean + sd * Normal(); }
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Cheap counter-style generator for per-sample streams.
class SplitMixRng {
 public:
  explicit SplitMixRng(uint64_t seed) : state_(seed) {}
  uint64_t Next();
  double UniformOpen();
  double Normal();

 private:
  uint64_t state_;
};

}  // namespace icurisk

#endif  // ICURISK_COMMON_RANDOM_H_
