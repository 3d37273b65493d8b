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

#include "core/staircase.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/mathfn.hpp"

namespace staircase {

void validate(const StaircaseParams& params) {
  validate(params.norm);
  require(std::isfinite(params.eps) && params.eps > 0.0,
          ErrorCode::kInvalidArgument, "eps must be positive and finite");
  require(std::isfinite(params.delta) && params.delta > 0.0,
          ErrorCode::kInvalidArgument, "delta must be positive and finite");
  require(params.gamma >= 0.0 && params.gamma <= 1.0,
          ErrorCode::kInvalidArgument, "gamma must lie in [0, 1]");
}

namespace {

// Unnormalized mass of band (k, 1): e^{-k eps} ((k+gamma)^n - k^n).
double band_mass_1(double k, double gamma, double n, double eps) {
  if (gamma == 0.0) return 0.0;
  return std::exp(-k * eps) * pow_diff(k, k + gamma, n);
}

// Unnormalized mass of band (k, 2): e^{-(k+1) eps} ((k+1)^n - (k+gamma)^n).
double band_mass_2(double k, double gamma, double n, double eps) {
  if (gamma == 1.0) return 0.0;
  return std::exp(-(k + 1.0) * eps) * pow_diff(k + gamma, k + 1.0, n);
}

// Rigorous bound on sum_{k > K} e^{-k eps}((k+1)^n - k^n), the unnormalized
// mass beyond period K; infinity when the geometric ratio bound is not yet
// below 1 at K+1.
double tail_bound(int K, double n, double eps) {
  double k1 = static_cast<double>(K) + 1.0;
  double ratio = std::exp(-eps) * std::pow((k1 + 2.0) / (k1 + 1.0), n - 1.0);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return n * std::exp(-k1 * eps) * std::pow(k1 + 1.0, n - 1.0) /
         (1.0 - ratio);
}

constexpr int kMaxBands = 5000000;

}  // namespace

BandTable build_band_table(const StaircaseParams& params, double tail_tol) {
  validate(params);
  require(std::isfinite(tail_tol) && tail_tol > 0.0 && tail_tol < 1.0,
          ErrorCode::kInvalidArgument, "tail tolerance must lie in (0, 1)");
  const double n = static_cast<double>(params.norm.dim);
  const double eps = params.eps;
  const double gamma = params.gamma;

  // Exact band-series normalizer S: positive terms, summed until they stop
  // contributing (terms decay geometrically once past the hump near
  // k ~ (n-1)/eps).
  KahanSum series;
  double prev_term = std::numeric_limits<double>::infinity();
  int small_terms = 0;
  int series_k = 0;
  for (; series_k <= kMaxBands; ++series_k) {
    double k = static_cast<double>(series_k);
    double term = band_mass_1(k, gamma, n, eps) + band_mass_2(k, gamma, n, eps);
    series.add(term);
    if (term <= series.value() * 1e-18 && term <= prev_term) {
      if (++small_terms >= 2) break;
    } else {
      small_terms = 0;
    }
    prev_term = term;
  }
  require(series_k < kMaxBands, ErrorCode::kInvalidArgument,
          "band series too long to tabulate; eps is too small");
  const double S = series.value();
  require(S > 0.0 && std::isfinite(S), ErrorCode::kInternal,
          "band series normalizer must be positive");

  // Truncation point: least K whose provable tail bound is below tolerance.
  int k_max = 0;
  while (true) {
    double bound = tail_bound(k_max, n, eps) / S;
    if (bound < tail_tol) break;
    ++k_max;
    require(k_max < kMaxBands, ErrorCode::kInvalidArgument,
            "band table too long to tabulate; tail tolerance or eps too small");
  }

  BandTable table;
  table.params_ = params;
  table.k_max_ = k_max;
  table.tail_tol_ = tail_tol;
  table.series_norm_ = S;
  table.log_normalizer_ = -(log_unit_ball_volume(params.norm) +
                            n * std::log(params.delta) + std::log(S));
  table.normalizer_ = std::exp(table.log_normalizer_);

  table.bands_.reserve(2 * static_cast<std::size_t>(k_max + 1));
  KahanSum kept;
  for (int k = 0; k <= k_max; ++k) {
    double kd = static_cast<double>(k);
    double w1 = band_mass_1(kd, gamma, n, eps) / S;
    double w2 = band_mass_2(kd, gamma, n, eps) / S;
    table.bands_.push_back({k, 1, w1});
    table.bands_.push_back({k, 2, w2});
    kept.add(w1);
    kept.add(w2);
  }
  // kept can land one ulp above 1; the residual is a mass and stays >= 0.
  table.tail_mass_ = std::fmax(0.0, 1.0 - kept.value());
  for (Band& b : table.bands_) b.weight /= kept.value();
  for (std::size_t idx = 0; idx < table.bands_.size(); ++idx) {
    if (table.bands_[idx].weight > 0.0) {
      table.last_positive_ = static_cast<int>(idx);
    }
  }

  if (k_max >= 16) {
    // Vose alias table; zero-weight entries end up with cell probability 0
    // and are never returned.
    const std::size_t m = table.bands_.size();
    std::vector<double> scaled(m);
    for (std::size_t idx = 0; idx < m; ++idx) {
      scaled[idx] = table.bands_[idx].weight * static_cast<double>(m);
    }
    std::vector<int> small, large;
    for (std::size_t idx = m; idx-- > 0;) {
      (scaled[idx] < 1.0 ? small : large).push_back(static_cast<int>(idx));
    }
    table.alias_prob_.assign(m, 1.0);
    table.alias_index_.assign(m, table.last_positive_);
    while (!small.empty() && !large.empty()) {
      int s = small.back();
      small.pop_back();
      int l = large.back();
      large.pop_back();
      table.alias_prob_[static_cast<std::size_t>(s)] =
          scaled[static_cast<std::size_t>(s)];
      table.alias_index_[static_cast<std::size_t>(s)] = l;
      scaled[static_cast<std::size_t>(l)] =
          scaled[static_cast<std::size_t>(l)] +
          scaled[static_cast<std::size_t>(s)] - 1.0;
      (scaled[static_cast<std::size_t>(l)] < 1.0 ? small : large).push_back(l);
    }
    for (int idx : small) {
      table.alias_prob_[static_cast<std::size_t>(idx)] = 1.0;
      table.alias_index_[static_cast<std::size_t>(idx)] = idx;
    }
    for (int idx : large) {
      table.alias_prob_[static_cast<std::size_t>(idx)] = 1.0;
      table.alias_index_[static_cast<std::size_t>(idx)] = idx;
    }
  }
  return table;
}

int BandTable::sample_band_index(Rng& rng) const {
  if (!alias_prob_.empty()) {
    double x = rng.uniform01() * static_cast<double>(alias_prob_.size());
    auto cell = static_cast<std::size_t>(x);
    if (cell >= alias_prob_.size()) cell = alias_prob_.size() - 1;
    double frac = x - static_cast<double>(cell);
    return frac < alias_prob_[cell] ? static_cast<int>(cell)
                                    : alias_index_[cell];
  }
  double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t idx = 0; idx < bands_.size(); ++idx) {
    cum += bands_[idx].weight;
    if (u < cum) return static_cast<int>(idx);
  }
  return last_positive_;
}

double density_radial(const BandTable& table, double r) {
  require(r >= 0.0 && !std::isnan(r), ErrorCode::kInvalidArgument,
          "radius must be >= 0");
  const StaircaseParams& p = table.params();
  double t = r / p.delta;
  if (t >= static_cast<double>(std::numeric_limits<std::int64_t>::max())) {
    return 0.0;
  }
  double k = std::floor(t);
  double frac = r - k * p.delta;
  if (frac < 0.0) {
    k -= 1.0;
    frac = r - k * p.delta;
  } else if (frac >= p.delta) {
    k += 1.0;
    frac = r - k * p.delta;
  }
  double level = (frac < p.gamma * p.delta) ? k : k + 1.0;
  return std::exp(table.log_normalizer() - level * p.eps);
}

double density(const BandTable& table, const double* x) {
  return density_radial(table, norm(table.params().norm, x));
}

double density(const BandTable& table, const std::vector<double>& x) {
  return density_radial(table, norm(table.params().norm, x));
}

double radius_from_uniform(const StaircaseParams& params, int k, int i,
                           double u) {
  validate(params);
  require(k >= 0, ErrorCode::kInvalidArgument, "band index k must be >= 0");
  require(i == 1 || i == 2, ErrorCode::kInvalidArgument,
          "band side i must be 1 or 2");
  require(u >= 0.0 && u <= 1.0, ErrorCode::kInvalidArgument,
          "quantile must lie in [0, 1]");
  double a, b;
  if (i == 1) {
    require(params.gamma > 0.0, ErrorCode::kDegenerateBand,
            "band (k, 1) is empty when gamma = 0");
    a = static_cast<double>(k);
    b = static_cast<double>(k) + params.gamma;
  } else {
    require(params.gamma < 1.0, ErrorCode::kDegenerateBand,
            "band (k, 2) is empty when gamma = 1");
    a = static_cast<double>(k) + params.gamma;
    b = static_cast<double>(k) + 1.0;
  }
  const double n = static_cast<double>(params.norm.dim);
  return params.delta * shell_quantile(a, b, n, u);
}

void draw_sample(const BandTable& table, Rng& rng, double* x) {
  const StaircaseParams& p = table.params();
  const Band& band =
      table.bands()[static_cast<std::size_t>(table.sample_band_index(rng))];
  double r = radius_from_uniform(p, band.k, band.i, rng.uniform01());
  sample_direction(p.norm, rng, x);
  for (int c = 0; c < p.norm.dim; ++c) x[c] *= r;
}

void sample(const BandTable& table, Rng& rng, std::int64_t count,
            double* out) {
  require(count >= 0, ErrorCode::kInvalidArgument, "count must be >= 0");
  const int n = table.params().norm.dim;
  for (std::int64_t s = 0; s < count; ++s) {
    draw_sample(table, rng, out + s * n);
  }
}

std::vector<double> sample(const BandTable& table, Rng& rng,
                           std::int64_t count) {
  std::vector<double> out(static_cast<std::size_t>(count) *
                          static_cast<std::size_t>(table.params().norm.dim));
  sample(table, rng, count, out.data());
  return out;
}

std::int64_t shard_draw_count(std::int64_t count, int shard) {
  require(count >= 0, ErrorCode::kInvalidArgument, "count must be >= 0");
  require(shard >= 0 && shard < kSampleShards, ErrorCode::kInvalidArgument,
          "shard index out of range");
  return count / kSampleShards + (shard < count % kSampleShards ? 1 : 0);
}

std::uint64_t shard_stream_seed(std::uint64_t seed, int shard) {
  require(shard >= 0 && shard < kSampleShards, ErrorCode::kInvalidArgument,
          "shard index out of range");
  return mix_seed(seed, static_cast<std::uint64_t>(shard));
}

void sample_sharded(const BandTable& table, std::uint64_t seed,
                    std::int64_t count, double* out) {
  require(count >= 0, ErrorCode::kInvalidArgument, "count must be >= 0");
  const int n = table.params().norm.dim;
  std::int64_t offset = 0;
  for (int s = 0; s < kSampleShards; ++s) {
    std::int64_t m = shard_draw_count(count, s);
    Rng rng(shard_stream_seed(seed, s));
    for (std::int64_t d = 0; d < m; ++d) {
      draw_sample(table, rng, out + (offset + d) * n);
    }
    offset += m;
  }
}

std::vector<double> sample_sharded(const BandTable& table, std::uint64_t seed,
                                   std::int64_t count) {
  std::vector<double> out(static_cast<std::size_t>(count) *
                          static_cast<std::size_t>(table.params().norm.dim));
  sample_sharded(table, seed, count, out.data());
  return out;
}

double radial_cdf(const BandTable& table, double r) {
  require(r >= 0.0 && !std::isnan(r), ErrorCode::kInvalidArgument,
          "radius must be >= 0");
  const StaircaseParams& p = table.params();
  const double n = static_cast<double>(p.norm.dim);
  KahanSum acc;
  for (const Band& band : table.bands()) {
    if (band.weight == 0.0) continue;
    double a = (band.i == 1) ? static_cast<double>(band.k)
                             : static_cast<double>(band.k) + p.gamma;
    double b = (band.i == 1) ? static_cast<double>(band.k) + p.gamma
                             : static_cast<double>(band.k) + 1.0;
    double lo = a * p.delta;
    double hi = b * p.delta;
    if (r >= hi) {
      acc.add(band.weight);
    } else if (r > lo) {
      acc.add(band.weight * pow_diff(lo, r, n) / pow_diff(lo, hi, n));
      break;
    } else {
      break;
    }
  }
  return std::min(acc.value(), 1.0);
}

RadialProfile staircase_profile(const BandTable& table) {
  const StaircaseParams& p = table.params();
  const double a = table.normalizer();
  std::vector<double> breakpoints;
  std::vector<double> values;
  if (p.gamma > 0.0 && p.gamma < 1.0) {
    breakpoints = {0.0, p.gamma * p.delta, p.delta};
    values = {a, a * std::exp(-p.eps)};
  } else {
    // gamma = 0 and gamma = 1 share the same single-plateau period:
    // a(0) e^{-eps} = a(1).
    breakpoints = {0.0, p.delta};
    values = {p.gamma == 0.0 ? a * std::exp(-p.eps) : a};
  }
  return RadialProfile(std::move(breakpoints), std::move(values),
                       RadialProfile::Tail::kDecay, p.eps, p.delta);
}

}  // namespace staircase
