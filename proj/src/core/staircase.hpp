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

#ifndef STAIRCASE_CORE_STAIRCASE_HPP
#define STAIRCASE_CORE_STAIRCASE_HPP

#include <cstdint>
#include <vector>

#include "core/norms.hpp"
#include "core/profile.hpp"
#include "core/rng.hpp"

namespace staircase {

// Parameters of the staircase mechanism: privacy budget eps > 0,
// sensitivity delta > 0 (both distances and densities live in the lp
// geometry of `norm`), and the plateau-split parameter gamma in [0, 1].
struct StaircaseParams {
  double eps = 1.0;
  double delta = 1.0;
  NormSpec norm;
  double gamma = 0.5;
};

void validate(const StaircaseParams& params);

// One radial band B_{k,i}: i = 1 covers radii [k delta, (k+gamma) delta),
// i = 2 covers [(k+gamma) delta, (k+1) delta). `weight` is the band's
// probability after truncation and renormalization; empty bands (gamma = 0
// for i = 1, gamma = 1 for i = 2) carry weight exactly 0 and are never
// sampled.
struct Band {
  int k = 0;
  int i = 1;
  double weight = 0.0;
};

// Discrete radial band distribution of a staircase density, truncated where
// the remaining tail mass drops below the configured tolerance and then
// renormalized. Densities and plateau levels are handled in log space
// (log a(gamma) - k eps) to stay stable for large k.
class BandTable {
 public:
  const StaircaseParams& params() const { return params_; }
  int k_max() const { return k_max_; }
  const std::vector<Band>& bands() const { return bands_; }
  // Pre-renormalization probability mass beyond k_max; below the build
  // tolerance by construction.
  double tail_mass() const { return tail_mass_; }
  double tail_tolerance() const { return tail_tol_; }
  // Normalizing constant a(gamma) of the density and its log.
  double normalizer() const { return normalizer_; }
  double log_normalizer() const { return log_normalizer_; }
  // Exact normalizer of the radial band series:
  // S = sum_k e^{-k eps}((k+gamma)^n - k^n) + e^{-(k+1) eps}((k+1)^n - (k+gamma)^n).
  double series_norm() const { return series_norm_; }
  bool uses_alias() const { return !alias_prob_.empty(); }

  // Index into bands() drawn proportionally to weight: O(1) via an alias
  // table when k_max >= 16, linear scan otherwise.
  int sample_band_index(Rng& rng) const;

 private:
  friend BandTable build_band_table(const StaircaseParams&, double);

  StaircaseParams params_;
  int k_max_ = 0;
  std::vector<Band> bands_;
  double tail_mass_ = 0.0;
  double tail_tol_ = 0.0;
  double normalizer_ = 0.0;
  double log_normalizer_ = 0.0;
  double series_norm_ = 0.0;
  std::vector<double> alias_prob_;
  std::vector<int> alias_index_;
  int last_positive_ = 0;
};

// Builds the band table for the staircase density
//   f(x) = a(gamma) e^{-k eps}      for ||x|| in [k delta, (k+gamma) delta)
//   f(x) = a(gamma) e^{-(k+1) eps}  for ||x|| in [(k+gamma) delta, (k+1) delta)
// truncated once the remaining mass is provably below tail_tol.
BandTable build_band_table(const StaircaseParams& params,
                           double tail_tol = 1e-12);

// Density at radius r (plateau lookup, right-open at breakpoints: at
// r = (k+gamma) delta the lower plateau value applies).
double density_radial(const BandTable& table, double r);

// Density at the point x (length = dim).
double density(const BandTable& table, const double* x);
double density(const BandTable& table, const std::vector<double>& x);

// Inverse-transform radius inside band (k, i) at quantile u in [0, 1]:
// R = delta (u (b^n - a^n) + a^n)^{1/n} with [a, b] the band in units of
// delta. Throws for empty bands.
double radius_from_uniform(const StaircaseParams& params, int k, int i,
                           double u);

// One draw: band index, then conditional radius, then a cone-measure
// direction; x = R * U (length dim). Reentrant: all state is in `rng`.
void draw_sample(const BandTable& table, Rng& rng, double* x);

// `out` receives count * dim values, drawn sequentially from `rng`.
void sample(const BandTable& table, Rng& rng, std::int64_t count, double* out);
std::vector<double> sample(const BandTable& table, Rng& rng,
                           std::int64_t count);

// Fixed shard layout shared by the sharded sampler and the Monte Carlo cost
// estimator, so samples written to disk replay bit-for-bit: shard s draws
// shard_draw_count(count, s) points from the substream
// mix_seed(seed, s), and shards are concatenated in index order.
inline constexpr int kSampleShards = 8;
std::int64_t shard_draw_count(std::int64_t count, int shard);
std::uint64_t shard_stream_seed(std::uint64_t seed, int shard);

// Deterministic draw of `count` points under the fixed shard layout;
// depends only on (table, seed, count), never on thread availability.
void sample_sharded(const BandTable& table, std::uint64_t seed,
                    std::int64_t count, double* out);
std::vector<double> sample_sharded(const BandTable& table, std::uint64_t seed,
                                   std::int64_t count);

// P(||X|| <= r) assembled from band volumes.
double radial_cdf(const BandTable& table, double r);

// The density's radial profile: one period [0, delta) of plateaus plus an
// exact decay tail (gamma = 0 and gamma = 1 both yield the single-plateau
// period they share).
RadialProfile staircase_profile(const BandTable& table);

}  // namespace staircase

#endif  // STAIRCASE_CORE_STAIRCASE_HPP
