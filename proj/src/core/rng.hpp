// Copyright 2026 The staircase-dp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STAIRCASE_CORE_RNG_HPP
#define STAIRCASE_CORE_RNG_HPP

#include <cstdint>
#include <random>

namespace staircase {

// Derives a substream seed from (root, tag): splitmix64 finalizer applied to
// root advanced by (tag+1) golden-ratio increments. Documented so alternate
// implementations can reproduce streams:
//   z = root + (tag + 1) * 0x9E3779B97F4A7C15
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB
//   z ^= z >> 31
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t tag);

// Deterministic random stream. The engine is std::mt19937_64, whose
// algorithm and single-value seeding are fully specified by the standard;
// all variate transforms are implemented here so that streams replay
// byte-identically across platforms (std::*_distribution algorithms are
// implementation-defined and deliberately avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed), eng_(seed) {}

  std::uint64_t root_seed() const { return root_; }

  // Independent stream derived from this stream's root seed and a tag;
  // does not advance or depend on this stream's position.
  Rng substream(std::uint64_t tag) const { return Rng(mix_seed(root_, tag)); }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // +1 or -1 with equal probability.
  double sign() { return (eng_() >> 63) ? 1.0 : -1.0; }

  double exponential() { return -std::log(uniform_open()); }

  double normal();

  // Gamma(shape, 1), shape > 0. Marsaglia-Tsang squeeze for shape >= 1,
  // boosted by U^{1/shape} below 1.
  double gamma(double shape);

 private:
  std::uint64_t root_;
  std::mt19937_64 eng_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace staircase

#endif  // STAIRCASE_CORE_RNG_HPP
