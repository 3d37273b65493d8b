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

#include "core/dpverify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "core/errors.hpp"
#include "core/mathfn.hpp"
#include "core/parallel.hpp"
#include "core/profile.hpp"

namespace staircase {

RadialDensityModel staircase_density_model(const BandTable& table) {
  auto shared = std::make_shared<BandTable>(table);
  RadialDensityModel model;
  model.norm = shared->params().norm;
  model.eval = [shared](double r) { return density_radial(*shared, r); };
  model.sample_radius = [shared](Rng& rng) {
    const Band& band = shared->bands()[static_cast<std::size_t>(
        shared->sample_band_index(rng))];
    return radius_from_uniform(shared->params(), band.k, band.i,
                               rng.uniform01());
  };
  // Plateau boundaries of the first few periods. The plateau ratio is the
  // same e^eps everywhere, and small radii carry the least rounding in the
  // density's log-space evaluation, so these are the tight pairs.
  const StaircaseParams& p = shared->params();
  int periods = std::min(shared->k_max(), 8);
  for (int k = 0; k <= periods; ++k) {
    double kd = static_cast<double>(k);
    if (p.gamma > 0.0 && p.gamma < 1.0) {
      model.breakpoints.push_back((kd + p.gamma) * p.delta);
    }
    model.breakpoints.push_back((kd + 1.0) * p.delta);
  }
  return model;
}

RadialDensityModel profile_density_model(const RadialProfile& profile,
                                         const NormSpec& norm) {
  validate(norm);
  auto shared = std::make_shared<RadialProfile>(profile);
  RadialDensityModel model;
  model.norm = norm;
  model.eval = [shared](double r) { return (*shared)(r); };
  NormSpec nspec = norm;
  model.sample_radius = [shared, nspec](Rng& rng) {
    return profile_radial_quantile(*shared, nspec, rng.uniform01());
  };
  RadialProfile window = profile.materialized(
      profile.tail() == RadialProfile::Tail::kDecay ? 2 : 0);
  model.breakpoints.assign(window.breakpoints().begin() + 1,
                           window.breakpoints().end());
  return model;
}

RadialDensityModel radial_laplace_model(double eps, double delta,
                                        const NormSpec& norm) {
  validate(norm);
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  const double n = static_cast<double>(norm.dim);
  const double log_c = n * std::log(eps) - log_unit_ball_volume(norm) -
                       std::lgamma(n + 1.0) - n * std::log(delta);
  const double rate = eps / delta;
  RadialDensityModel model;
  model.norm = norm;
  model.eval = [log_c, rate](double r) { return std::exp(log_c - rate * r); };
  const double scale = delta / eps;
  model.sample_radius = [n, scale](Rng& rng) {
    return scale * rng.gamma(n);
  };
  // The density is continuous; period multiples still give the pair fuzzer
  // distance-delta straddles to lean on.
  for (int k = 1; k <= 8; ++k) {
    model.breakpoints.push_back(static_cast<double>(k) * delta);
  }
  return model;
}

namespace {

struct RatioBest {
  double ratio = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

// Scores both orientations of (x, y); keeps the larger ratio. A positive
// density against an exact zero scores infinity.
void score_pair(const RadialDensityModel& model, const std::vector<double>& x,
                const std::vector<double>& y, RatioBest* best) {
  double fx = model.eval(norm(model.norm, x));
  double fy = model.eval(norm(model.norm, y));
  if (fx == 0.0 && fy == 0.0) return;
  double ratio;
  const std::vector<double>*hi, *lo;
  if (fx >= fy) {
    ratio = (fy == 0.0) ? std::numeric_limits<double>::infinity() : fx / fy;
    hi = &x;
    lo = &y;
  } else {
    ratio = (fx == 0.0) ? std::numeric_limits<double>::infinity() : fy / fx;
    hi = &y;
    lo = &x;
  }
  if (ratio > best->ratio) {
    best->ratio = ratio;
    best->x = *hi;
    best->y = *lo;
  }
}

std::vector<double> axis_point(int dim, double r) {
  std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
  x[0] = r;
  return x;
}

}  // namespace

DpReport check_ratio_pairs(const RadialDensityModel& model, double eps,
                           double delta, std::uint64_t seed,
                           std::int64_t pairs) {
  validate(model.norm);
  require(pairs >= 1, ErrorCode::kInvalidArgument, "need at least one pair");
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  const int n = model.norm.dim;

  RatioBest best;
  std::int64_t tested = 0;

  // Deterministic boundary straddles: at every breakpoint b, the 1-ulp pair
  // just across b, and a pair a full delta apart ending just below b + delta
  // (pulled in so rounding never lets the separation exceed delta).
  for (double b : model.breakpoints) {
    if (!(b > 0.0)) continue;
    double below = std::nextafter(b, 0.0);
    score_pair(model, axis_point(n, below), axis_point(n, b), &best);
    ++tested;
    double big = std::fmax(below, delta);
    double small = std::fmin(below, delta);
    double far = big + small;
    // Fast2Sum error term: below + delta == far + err exactly, so one ulp
    // of pull when err < 0 keeps the true separation at or below delta
    // (the rounded sum alone may sit a fraction of an ulp beyond it).
    double err = small - (far - big);
    if (err < 0.0) far = std::nextafter(far, 0.0);
    score_pair(model, axis_point(n, below), axis_point(n, far), &best);
    ++tested;
  }
  score_pair(model, axis_point(n, 0.0), axis_point(n, delta), &best);
  ++tested;

  // Random pairs: x from the density's own sampler, y = x + t delta U.
  constexpr int kShards = 8;
  constexpr std::uint64_t kPairTag = 0x9A000000ull;
  RatioBest shard_best[kShards];
  run_sharded(kShards, [&](int shard) {
    Rng rng(mix_seed(seed, kPairTag + static_cast<std::uint64_t>(shard)));
    std::int64_t m = pairs / kShards + (shard < pairs % kShards ? 1 : 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    std::vector<double> u(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < m; ++s) {
      double r = model.sample_radius(rng);
      sample_direction(model.norm, rng, x.data());
      for (int c = 0; c < n; ++c) x[c] *= r;
      double t = rng.uniform01();
      sample_direction(model.norm, rng, u.data());
      for (int c = 0; c < n; ++c) y[c] = x[c] + t * delta * u[c];
      score_pair(model, x, y, &shard_best[shard]);
    }
  });
  for (const RatioBest& sb : shard_best) {
    if (sb.ratio > best.ratio) best = sb;
  }
  tested += pairs;

  DpReport report;
  report.max_ratio = best.ratio;
  report.witness_x = best.x;
  report.witness_y = best.y;
  report.pairs_tested = tested;
  report.passed = best.ratio <= std::exp(eps) * (1.0 + 1e-12);
  return report;
}

namespace {

// Materialization used by the step-profile checks: two extra periods of a
// decay tail. Pairs reaching deeper into the tail reduce to pairs inside
// this window (shifting a point by whole periods scales its value by
// e^{-eps} each and the ceiling distance by one each, leaving the
// log-Lipschitz inequality unchanged), so deciding on the window decides
// the whole profile.
RadialProfile check_window(const RadialProfile& profile) {
  return profile.materialized(
      profile.tail() == RadialProfile::Tail::kDecay ? 2 : 0);
}

}  // namespace

bool check_radial_loglip(const RadialProfile& profile, double eps,
                         double delta) {
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  RadialProfile w = check_window(profile);
  const std::vector<double>& b = w.breakpoints();
  const std::vector<double>& v = w.values();
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (v[i] == v[j]) continue;
      if (v[i] == 0.0 || v[j] == 0.0) return false;
      // Least ceiling count attainable between the plateaus: their open
      // gap is (b[j] - b[i+1], b[j+1] - b[i]).
      double gap = b[j] - b[i + 1];
      double hops = (gap <= 0.0) ? 1.0 : ceil_above_snapped(gap / delta);
      double bound = eps * hops;
      if (std::abs(std::log(v[i]) - std::log(v[j])) >
          bound + 1e-9 * (1.0 + bound)) {
        return false;
      }
    }
  }
  return true;
}

bool check_maximal_decay(const RadialProfile& profile, double eps,
                         double delta, double tol) {
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  require(tol > 0.0, ErrorCode::kInvalidArgument, "tol must be > 0");
  double periods = profile.end() / delta;
  require(std::abs(periods - std::nearbyint(periods)) <=
              1e-9 * std::fmax(1.0, periods),
          ErrorCode::kPreconditionFailed,
          "profile must span whole periods of delta");

  // Nonincreasing (which, with right-open steps, is also lower
  // semicontinuity of the induced function).
  RadialProfile w = check_window(profile);
  const std::vector<double>& v = w.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] > v[i] * (1.0 + tol)) return false;
  }

  // Exact period decay at every cell of the grid refined by both the
  // breakpoints and their delta-shifts. Cells at or beyond the original
  // explicit end hold by the tail construction; testing them is free.
  std::vector<double> grid;
  for (double bp : w.breakpoints()) {
    grid.push_back(bp);
    if (bp >= delta) grid.push_back(bp - delta);
  }
  std::sort(grid.begin(), grid.end());
  const double end = profile.end();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double t = 0.5 * (grid[i] + grid[i + 1]);
    if (t >= end) break;
    // Grid points one rounding error apart are the same real breakpoint
    // seen through two arithmetic paths; the sliver between them has no
    // mass and its midpoint straddles the two periods inconsistently.
    if (grid[i + 1] - grid[i] <= 1e-12 * std::fmax(1.0, grid[i + 1])) continue;
    double lhs = w(t + delta);
    double rhs = std::exp(-eps) * w(t);
    if (lhs == 0.0 && rhs == 0.0) continue;
    // A zero against a positive (compact support trailing positive mass)
    // lands here too and fails the relative comparison.
    if (std::abs(lhs - rhs) > tol * std::fmax(lhs, rhs)) return false;
  }
  return true;
}

double enlargement_radius(double h, double eps, double delta) {
  require(h > 0.0 && std::isfinite(h), ErrorCode::kInvalidArgument,
          "level drop h must be positive and finite");
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  return delta * (ceil_snapped(h / eps) - 1.0);
}

GridSet superlevel_set(const RadialProfile& profile, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorCode::kInvalidArgument,
          "level must be positive and finite");
  RadialProfile w = profile;
  if (profile.tail() == RadialProfile::Tail::kDecay) {
    // Materialize until the tail maximum drops below lambda.
    double vmax = 0.0;
    for (double v : profile.values()) vmax = std::fmax(vmax, v);
    int periods = 2;
    if (vmax > lambda) {
      periods += static_cast<int>(
          std::ceil((std::log(vmax) - std::log(lambda)) / profile.tail_eps()));
    }
    w = profile.materialized(periods);
  }
  std::vector<Interval> pieces;
  const std::vector<double>& b = w.breakpoints();
  const std::vector<double>& v = w.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > lambda) pieces.push_back({b[i], b[i + 1]});
  }
  return GridSet(std::move(pieces));
}

bool check_levelset_enlargement(const RadialProfile& profile, double eps,
                                double delta,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& hs) {
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  for (double lambda : lambdas) {
    for (double h : hs) {
      GridSet level = superlevel_set(profile, lambda);
      GridSet target = superlevel_set(profile, lambda * std::exp(-h));
      double grow = enlargement_radius(h, eps, delta);
      std::vector<Interval> enlarged;
      double extent = 0.0;
      for (const Interval& iv : level.intervals()) {
        enlarged.push_back({std::fmax(0.0, iv.lo - grow), iv.hi + grow});
        extent = std::fmax(extent, iv.hi + grow);
      }
      GridSet leak = set_difference(GridSet(std::move(enlarged)), target);
      // Boundary-exact endpoints may survive as ulp slivers; anything
      // wider is a genuine containment failure.
      if (leak.measure() > 1e-12 * std::fmax(1.0, extent)) return false;
    }
  }
  return true;
}

bool laplace_sandwich_check(const RadialProfile& profile, double eps,
                            double delta, const NormSpec& norm) {
  validate(norm);
  require(check_maximal_decay(profile, eps, delta),
          ErrorCode::kPreconditionFailed,
          "profile must decay maximally for the comparator sandwich");
  double mass = profile_mass(profile, norm);
  require(std::abs(mass - 1.0) <= 1e-9, ErrorCode::kPreconditionFailed,
          "profile must be normalized to unit mass");
  const double n = static_cast<double>(norm.dim);
  const double log_c = n * std::log(eps) - log_unit_ball_volume(norm) -
                       std::lgamma(n + 1.0) - n * std::log(delta);
  const double rate = eps / delta;
  auto phi = [&](double r) { return std::exp(log_c - rate * r); };
  const double up = std::exp(2.0 * eps);
  const double down = std::exp(-2.0 * eps);
  const std::vector<double>& b = profile.breakpoints();
  const std::vector<double>& v = profile.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    // phi decreases, rho is constant on the plateau: the binding points
    // are the plateau's right end (upper bound) and left end (lower).
    if (v[i] > up * phi(b[i + 1]) * (1.0 + 1e-9)) return false;
    if (v[i] < down * phi(b[i]) * (1.0 - 1e-9)) return false;
  }
  // Beyond the explicit domain both sides scale by exactly e^{-eps} per
  // period, so the explicit plateaus decide the tail too.
  return true;
}

}  // namespace staircase
