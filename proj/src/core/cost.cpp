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

#include "core/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/errors.hpp"
#include "core/mathfn.hpp"
#include "core/parallel.hpp"

namespace staircase {

void validate(const CostSpec& cost) {
  switch (cost.kind) {
    case CostSpec::Kind::kPower:
      require(std::isfinite(cost.q) && cost.q > 0.0,
              ErrorCode::kInvalidArgument, "power exponent q must be > 0");
      return;
    case CostSpec::Kind::kThreshold:
      require(std::isfinite(cost.lambda) && cost.lambda >= 0.0,
              ErrorCode::kInvalidArgument, "threshold lambda must be >= 0");
      return;
    case CostSpec::Kind::kTruncated:
      require(std::isfinite(cost.cap) && cost.cap >= 0.0,
              ErrorCode::kInvalidArgument, "truncation cap must be >= 0");
      return;
  }
  throw_error(ErrorCode::kInvalidArgument, "unknown cost kind");
}

double cost_value(const CostSpec& cost, double r) {
  switch (cost.kind) {
    case CostSpec::Kind::kPower:
      return std::pow(r, cost.q);
    case CostSpec::Kind::kThreshold:
      return r >= cost.lambda ? 1.0 : 0.0;
    case CostSpec::Kind::kTruncated:
      return std::min(r, cost.cap);
  }
  return 0.0;
}

std::vector<double> cost_kink_radii(const CostSpec& cost) {
  switch (cost.kind) {
    case CostSpec::Kind::kPower:
      return {};
    case CostSpec::Kind::kThreshold:
      return {cost.lambda};
    case CostSpec::Kind::kTruncated:
      return {cost.cap};
  }
  return {};
}

double band_conditional_moment(double a, double b, int dim, double q) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(a >= 0.0 && std::isfinite(b), ErrorCode::kInvalidArgument,
          "band endpoints must satisfy 0 <= a < b");
  require(b > a, ErrorCode::kDegenerateBand, "band [a, b) must be nonempty");
  require(q > 0.0, ErrorCode::kInvalidArgument, "moment order must be > 0");
  const double n = static_cast<double>(dim);
  return (n / (n + q)) * pow_diff(a, b, n + q) / pow_diff(a, b, n);
}

namespace {

// Integrand of the shell average: phi(delta t) t^{n-1} in scaled radius t.
double shell_g(const CostSpec& cost, double delta, double n, double t) {
  return cost_value(cost, delta * t) * std::pow(t, n - 1.0);
}

double simpson_rule(double lo, double hi, double flo, double fmid,
                    double fhi) {
  return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double adaptive_simpson(const CostSpec& cost, double delta, double n,
                        double lo, double hi, double flo, double fmid,
                        double fhi, double whole, double tol, int depth) {
  double mid = 0.5 * (lo + hi);
  double lmid = 0.5 * (lo + mid);
  double rmid = 0.5 * (mid + hi);
  double flmid = shell_g(cost, delta, n, lmid);
  double frmid = shell_g(cost, delta, n, rmid);
  double left = simpson_rule(lo, mid, flo, flmid, fmid);
  double right = simpson_rule(mid, hi, fmid, frmid, fhi);
  double err = left + right - whole;
  // Stop when the requested tolerance is met or when refinement is under
  // the floating-point floor of the integral's own magnitude.
  if (depth <= 0 || std::abs(err) <= 15.0 * tol ||
      std::abs(err) <= 15.0e-15 * std::abs(left + right)) {
    return left + right + err / 15.0;
  }
  return adaptive_simpson(cost, delta, n, lo, mid, flo, flmid, fmid, left,
                          0.5 * tol, depth - 1) +
         adaptive_simpson(cost, delta, n, mid, hi, fmid, frmid, fhi, right,
                          0.5 * tol, depth - 1);
}

// E[phi(R) | R in band delta*[a, b)], adaptive Simpson split at the kinks.
// Exact for power costs via the shell moment (Simpson never runs for them).
double band_mean_cost(const CostSpec& cost, int dim, double delta, double a,
                      double b, double quad_tol) {
  const double n = static_cast<double>(dim);
  if (cost.kind == CostSpec::Kind::kPower) {
    return std::pow(delta, cost.q) * band_conditional_moment(a, b, dim, cost.q);
  }
  std::vector<double> cuts = {a, b};
  for (double r : cost_kink_radii(cost)) {
    double t = r / delta;
    if (t > a && t < b) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double shell = pow_diff(a, b, n);
  KahanSum acc;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    double lo = cuts[c];
    double hi = cuts[c + 1];
    // Sample the open piece interior at the endpoints so jumps at a cut
    // never leak across it (threshold costs jump exactly at a cut).
    double flo = shell_g(cost, delta, n, std::nextafter(lo, hi));
    double fhi = shell_g(cost, delta, n, std::nextafter(hi, lo));
    double fmid = shell_g(cost, delta, n, 0.5 * (lo + hi));
    double whole = simpson_rule(lo, hi, flo, fmid, fhi);
    acc.add(adaptive_simpson(cost, delta, n, lo, hi, flo, fmid, fhi, whole,
                             quad_tol * shell / n, 36));
  }
  return acc.value() * n / shell;
}

}  // namespace

double expected_cost_series(const BandTable& table, const CostSpec& cost,
                            double tol) {
  validate(cost);
  require(std::isfinite(tol) && tol > 0.0, ErrorCode::kInvalidArgument,
          "series tolerance must be > 0");
  const StaircaseParams& p = table.params();
  const double n = static_cast<double>(p.norm.dim);
  const double S = table.series_norm();
  const double quad_tol =
      tol / static_cast<double>(std::max<std::size_t>(table.bands().size(), 1));

  // Contributions use the exact unnormalized band masses (not the truncated,
  // renormalized table weights), so the result is the mean of the full law.
  auto band_mass = [&](double kd, int i) {
    if (i == 1) {
      if (p.gamma == 0.0) return 0.0;
      return std::exp(-kd * p.eps) * pow_diff(kd, kd + p.gamma, n) / S;
    }
    if (p.gamma == 1.0) return 0.0;
    return std::exp(-(kd + 1.0) * p.eps) *
           pow_diff(kd + p.gamma, kd + 1.0, n) / S;
  };

  // Band contributions scale like k^{n+q*-1} e^{-k eps} (q* = q for power
  // costs, at most 1 otherwise), so they may legitimately grow up to
  // k ~ (n+q*-1)/eps; divergence detection only arms past that hump.
  double growth_order = n - 1.0;
  if (cost.kind == CostSpec::Kind::kPower) growth_order += cost.q;
  if (cost.kind == CostSpec::Kind::kTruncated) growth_order += 1.0;
  const double peak_band = growth_order / p.eps;

  // Threshold costs vanish on every band strictly below lambda; start at
  // the first band that can contribute. Underflowed decay means an exact 0.
  std::int64_t k_start = 0;
  if (cost.kind == CostSpec::Kind::kThreshold) {
    double t = cost.lambda / p.delta;
    if (t > 1.0) {
      k_start = static_cast<std::int64_t>(std::floor(t));
      if (static_cast<double>(k_start) * p.eps > 745.0) return 0.0;
    }
  }

  KahanSum acc;
  double prev_contrib = std::numeric_limits<double>::infinity();
  int nondecreasing = 0;
  constexpr std::int64_t kMaxIterations = 20000000;
  for (std::int64_t iter = 0;; ++iter) {
    require(iter < kMaxIterations, ErrorCode::kDivergentSeries,
            "mean cost series failed to converge within the iteration cap");
    std::int64_t k = k_start + iter;
    double kd = static_cast<double>(k);
    double contrib = 0.0;
    for (int i = 1; i <= 2; ++i) {
      double w = band_mass(kd, i);
      if (w <= 0.0) continue;
      double a = (i == 1) ? kd : kd + p.gamma;
      double b = (i == 1) ? kd + p.gamma : kd + 1.0;
      contrib += w * band_mean_cost(cost, p.norm.dim, p.delta, a, b, quad_tol);
    }
    if (!std::isfinite(contrib)) {
      std::ostringstream msg;
      msg << "mean cost diverges: contribution of band " << k
          << " is not finite (loss growth outruns the e^{-eps} period decay, "
             "eps = "
          << p.eps << ")";
      throw_error(ErrorCode::kDivergentSeries, msg.str());
    }
    acc.add(contrib);
    if (kd > peak_band + 1.0) {
      if (contrib >= prev_contrib && contrib > 0.0) {
        if (++nondecreasing >= 8) {
          std::ostringstream msg;
          msg << "mean cost diverges: band contributions stopped decaying "
                 "for 8 consecutive bands past band "
              << k << " (growth ratio " << contrib / prev_contrib
          << " >= 1 against period decay e^{-eps} = " << std::exp(-p.eps)
              << ")";
          throw_error(ErrorCode::kDivergentSeries, msg.str());
        }
      } else {
        nondecreasing = 0;
      }
      if (k > table.k_max() && std::isfinite(prev_contrib) &&
          prev_contrib > 0.0 && contrib < prev_contrib) {
        // Geometric tail estimate from the observed decay ratio.
        double ratio = contrib / prev_contrib;
        double tail_est = contrib * ratio / (1.0 - ratio);
        if (tail_est < tol || contrib <= acc.value() * 1e-18) break;
      } else if (k > table.k_max() && contrib == 0.0) {
        break;
      }
    }
    prev_contrib = contrib;
  }
  return acc.value();
}

namespace {

struct ShardMoments {
  double sum = 0.0;
  double sumsq = 0.0;
  std::int64_t count = 0;
};

// Combines per-shard sums in shard order; both MC paths funnel through this
// so their results agree bit for bit.
McEstimate pool_shards(const ShardMoments (&shards)[kSampleShards]) {
  KahanSum sum, sumsq;
  std::int64_t total = 0;
  for (const ShardMoments& s : shards) {
    if (s.count == 0) continue;
    sum.add(s.sum);
    sumsq.add(s.sumsq);
    total += s.count;
  }
  double mean = sum.value() / static_cast<double>(total);
  double var = (sumsq.value() - static_cast<double>(total) * mean * mean) /
               static_cast<double>(total - 1);
  if (var < 0.0) var = 0.0;
  McEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(total));
  est.count = total;
  return est;
}

}  // namespace

McEstimate expected_cost_mc(const BandTable& table, const CostSpec& cost,
                            std::uint64_t seed, std::int64_t count) {
  validate(cost);
  require(count >= 2, ErrorCode::kInvalidArgument,
          "Monte Carlo count must be >= 2");
  const NormSpec& nspec = table.params().norm;
  const int n = nspec.dim;

  ShardMoments shards[kSampleShards];
  run_sharded(kSampleShards, [&](int shard) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::int64_t m = shard_draw_count(count, shard);
    Rng rng(shard_stream_seed(seed, shard));
    KahanSum sum, sumsq;
    for (std::int64_t s = 0; s < m; ++s) {
      draw_sample(table, rng, x.data());
      double c = cost_value(cost, norm(nspec, x.data()));
      sum.add(c);
      sumsq.add(c * c);
    }
    shards[shard] = {sum.value(), sumsq.value(), m};
  });
  return pool_shards(shards);
}

McEstimate cost_from_samples(const NormSpec& nspec, const CostSpec& cost,
                             const double* samples, std::int64_t count) {
  validate(nspec);
  validate(cost);
  require(count >= 2, ErrorCode::kInvalidArgument,
          "need at least 2 stored draws");
  ShardMoments shards[kSampleShards];
  std::int64_t offset = 0;
  for (int shard = 0; shard < kSampleShards; ++shard) {
    std::int64_t m = shard_draw_count(count, shard);
    KahanSum sum, sumsq;
    for (std::int64_t s = 0; s < m; ++s) {
      double c = cost_value(
          cost, norm(nspec, samples + (offset + s) * nspec.dim));
      sum.add(c);
      sumsq.add(c * c);
    }
    shards[shard] = {sum.value(), sumsq.value(), m};
    offset += m;
  }
  return pool_shards(shards);
}

McEstimate cost_from_samples(const NormSpec& nspec, const CostSpec& cost,
                             const std::vector<double>& samples) {
  require(nspec.dim >= 1 &&
              samples.size() % static_cast<std::size_t>(nspec.dim) == 0,
          ErrorCode::kDimensionMismatch,
          "stored draws must be a whole number of dim-length points");
  return cost_from_samples(nspec, cost, samples.data(),
                           static_cast<std::int64_t>(
                               samples.size() /
                               static_cast<std::size_t>(nspec.dim)));
}

}  // namespace staircase
