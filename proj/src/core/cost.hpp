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

#ifndef STAIRCASE_CORE_COST_HPP_
#define STAIRCASE_CORE_COST_HPP_

#include <cstdint>
#include <vector>

#include "core/staircase.hpp"

namespace staircase {

// Loss as a nondecreasing function of the noise magnitude r = ||x||.
struct CostSpec {
  enum class Kind { kPower, kThreshold, kTruncated };

  Kind kind = Kind::kPower;
  // kPower:     phi(r) = r^q,             q > 0.
  // kThreshold: phi(r) = 1{r >= lambda},  lambda >= 0.
  // kTruncated: phi(r) = min(r, cap),     cap >= 0.
  double q = 1.0;
  double lambda = 1.0;
  double cap = 1.0;

  static CostSpec power(double q) {
    CostSpec c;
    c.kind = Kind::kPower;
    c.q = q;
    return c;
  }
  static CostSpec threshold(double lambda) {
    CostSpec c;
    c.kind = Kind::kThreshold;
    c.lambda = lambda;
    return c;
  }
  static CostSpec truncated(double cap) {
    CostSpec c;
    c.kind = Kind::kTruncated;
    c.cap = cap;
    return c;
  }
};

void validate(const CostSpec& cost);

// phi(r) for a single magnitude r >= 0.
double cost_value(const CostSpec& cost, double r);

// Radii where phi has a kink or jump; quadrature splits there.
std::vector<double> cost_kink_radii(const CostSpec& cost);

// E[R^q | R in delta*[a, b)] / delta^q for R the radius of a point drawn
// uniformly from the shell delta*[a, b) of a norm ball in dimension n:
//   (n / (n+q)) * (b^{n+q} - a^{n+q}) / (b^n - a^n).
double band_conditional_moment(double a, double b, int dim, double q);

// Mean cost under the staircase law, band by band: the closed-form shell
// moment for power costs, adaptive Simpson against the shell weight
// n r^{n-1} (split at phi's kinks, per-band tolerance tol / #bands)
// otherwise. Bands beyond the table's truncation point are included from
// the exact series until the remaining tail is provably below tol. Throws
// kDivergentSeries when band contributions stop decaying (phi outgrows the
// e^{-eps} period decay).
double expected_cost_series(const BandTable& table, const CostSpec& cost,
                            double tol = 1e-12);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t count = 0;
};

// Monte Carlo mean of phi(||X||) over `count` sampler draws. Uses the fixed
// shard layout of sample_sharded, so the estimate depends only on
// (table, cost, seed, count) and a file of sample_sharded draws replays it
// exactly; STAIRCASE_DP_THREADS caps concurrency, never changes the result.
McEstimate expected_cost_mc(const BandTable& table, const CostSpec& cost,
                            std::uint64_t seed, std::int64_t count);

// Mean of phi(||x||) over stored draws (count points of dimension
// norm.dim), pooled with the same shard layout and summation order as
// expected_cost_mc: feeding back sample_sharded output with the matching
// count reproduces the estimate bit for bit.
McEstimate cost_from_samples(const NormSpec& norm, const CostSpec& cost,
                             const double* samples, std::int64_t count);
McEstimate cost_from_samples(const NormSpec& norm, const CostSpec& cost,
                             const std::vector<double>& samples);

}  // namespace staircase

#endif  // STAIRCASE_CORE_COST_HPP_
