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

#include <cmath>
#include <cstdint>
#include <vector>
#include <doctest.h>

#include "core/rng.hpp"
#include "oracles.hpp"

using staircase::Rng;

namespace {

// The documented mix recipe, written out independently of the library.
std::uint64_t mix_reference(std::uint64_t root, std::uint64_t tag) {
  std::uint64_t z = root + (tag + 1) * 0x9E3779B97F4A7C15ull;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

TEST_CASE("seed mixing follows the documented recipe bit for bit") {
  for (std::uint64_t root : {0ull, 1ull, 42ull, 0xDEADBEEFCAFEull}) {
    for (std::uint64_t tag : {0ull, 1ull, 7ull, 0x1000ull, ~0ull}) {
      CHECK(staircase::mix_seed(root, tag) == mix_reference(root, tag));
    }
  }
}

TEST_CASE("equal seeds replay identical streams") {
  Rng a(123456789);
  Rng b(123456789);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("substreams depend on the root seed, not the stream position") {
  Rng a(77);
  Rng b(77);
  b.next_u64();
  b.next_u64();
  Rng sub_a = a.substream(5);
  Rng sub_b = b.substream(5);
  CHECK(sub_a.next_u64() == sub_b.next_u64());
  // Distinct tags give distinct streams.
  CHECK(a.substream(1).next_u64() != a.substream(2).next_u64());
}

TEST_CASE("uniform01 lies in the half-open unit interval") {
  Rng rng(9001);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_open never returns zero") {
  Rng rng(9002);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform_open();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("sign is a fair coin on {-1, +1}") {
  Rng rng(31);
  int plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double s = rng.sign();
    CHECK(std::abs(s) == 1.0);
    if (s > 0.0) ++plus;
  }
  double p = static_cast<double>(plus) / n;
  CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("exponential variates match the unit exponential law") {
  Rng rng(404);
  const int n = 200000;
  std::vector<double> xs(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[i] = rng.exponential();
    sum += xs[i];
  }
  double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
  double ks = oracles::ks_statistic(
      xs, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(ks < 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("normal variates have the right first two moments") {
  Rng rng(505);
  const int n = 200000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  // Var of the sample variance of a normal is about 2/n.
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma variates carry mean and variance equal to the shape") {
  Rng rng(606);
  const int n = 200000;
  for (double shape : {0.5, 1.0, 2.7, 15.0}) {
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = rng.gamma(shape);
      CHECK(x >= 0.0);
      sum += x;
      sumsq += x * x;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    // stderr of the mean is sqrt(shape/n); of the variance roughly
    // sqrt((2 + 6/shape) / n) * shape.
    CHECK(std::abs(mean - shape) <
          4.0 * std::sqrt(shape / static_cast<double>(n)));
    CHECK(std::abs(var - shape) <
          4.0 * shape * std::sqrt((2.0 + 6.0 / shape) / n));
  }
}

TEST_CASE("gamma at shape one reproduces the exponential law") {
  Rng rng(707);
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = rng.gamma(1.0);
  double ks = oracles::ks_statistic(
      xs, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(ks < 2.0 / std::sqrt(static_cast<double>(n)));
}
