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


#include "icurisk/common/random.h"

#include <cmath>
#include <numbers>

namespace icurisk {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

double BoxMuller(double u1, double u2, double* spare) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  *spare = r * std::sin(theta);
  return r * std::cos(theta);
}

}  // namespace

uint64_t Fnv1a64(std::string_view bytes, uint64_t seed) {
  uint64_t h = seed;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, std::string_view stage) {
  return Mix64(master ^ Mix64(Fnv1a64(stage)));
}

uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return Mix64(master ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::Uniform() { return static_cast<double>(engine_() >> 11) * kTwoPow53Inv; }

double Rng::UniformOpen() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

std::size_t Rng::UniformIndex(std::size_t n) {
  // Rejection keeps the draw unbiased for every n.
  const uint64_t bound = static_cast<uint64_t>(n);
  const uint64_t limit = max() - max() % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double Rng::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = UniformOpen();
  const double u2 = Uniform();
  has_spare_normal_ = true;
  return BoxMuller(u1, u2, &spare_normal_);
}

uint64_t SplitMixRng::Next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMixRng::UniformOpen() {
  return (static_cast<double>(Next() >> 11) + 0.5) * kTwoPow53Inv;
}

double SplitMixRng::Normal() {
  double spare;
  const double u1 = UniformOpen();
  const double u2 = UniformOpen();
  return BoxMuller(u1, u2, &spare);
}

}  // namespace icurisk
