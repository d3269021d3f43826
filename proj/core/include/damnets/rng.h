// Copyright 2026 The DAMNETS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DAMNETS_RNG_H_
#define DAMNETS_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace damnets {

// Seeded source of randomness used everywhere in the library.
//
// The engine is std::mt19937_64. The helpers below avoid the standard
// distributions (whose output is implementation-defined) so that a seed
// reproduces the same stream on every toolchain that ships mt19937_64.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  uint64_t below(uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // k distinct indices from [0, population), in the order they were drawn.
  std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent child seeds from (seed, stream).
uint64_t derive_seed(uint64_t seed, uint64_t stream);

// Seed drawn from std::random_device, for commands run without --seed.
uint64_t entropy_seed();

}  // namespace damnets

#endif  // DAMNETS_RNG_H_
