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

#ifndef STAIRCASE_CORE_DPVERIFY_HPP_
#define STAIRCASE_CORE_DPVERIFY_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "core/gridset.hpp"
#include "core/staircase.hpp"

namespace staircase {

// Outcome of a density-ratio fuzz run. passed <=> max_ratio stayed within
// e^eps up to relative slack 1e-12.
struct DpReport {
  double max_ratio = 0.0;
  std::vector<double> witness_x;
  std::vector<double> witness_y;
  bool passed = false;
  std::int64_t pairs_tested = 0;
};

// A density f(x) = eval(||x||) under `norm`, with enough structure to fuzz
// it: a sampler for ||X|| under the density itself (mass-weighted base
// points) and the radii where eval may jump (for deterministic
// boundary-straddling pairs).
struct RadialDensityModel {
  NormSpec norm;
  std::function<double(double)> eval;
  std::function<double(Rng&)> sample_radius;
  std::vector<double> breakpoints;
};

// The staircase density itself (breakpoints listed for the first few
// periods, where the plateau ratio is floating-point tightest).
RadialDensityModel staircase_density_model(const BandTable& table);

// An arbitrary radial step density given by its profile.
RadialDensityModel profile_density_model(const RadialProfile& profile,
                                         const NormSpec& norm);

// The radial comparator with density C e^{-eps r / delta},
// C = eps^n / (|B| n! delta^n); its magnitude is Gamma(n, delta/eps).
RadialDensityModel radial_laplace_model(double eps, double delta,
                                        const NormSpec& norm);

// Fuzzes the ratio bound f(x) <= e^eps f(y) for ||x - y|| <= delta:
// `pairs` random pairs (x sampled from the model, y = x + t delta U) plus
// deterministic boundary-straddling pairs at every model breakpoint (1-ulp
// and one-period straddles; random draws alone miss the measure-zero tight
// set). Both orientations of every pair are scored. Deterministic given
// (model, seed, pairs); work is sharded over substreams and the reported
// maximum never depends on thread count.
DpReport check_ratio_pairs(const RadialDensityModel& model, double eps,
                           double delta, std::uint64_t seed,
                           std::int64_t pairs);

// Exact decision of the log-Lipschitz property of a step profile:
// |log rho(r) - log rho(s)| <= eps * ceil(|r - s| / delta) for all r, s.
// Piecewise-constant rho makes finitely many plateau-pair comparisons
// sufficient (the per-pair bound is the least ceiling value attainable
// between the two plateaus). A zero plateau at finite distance from a
// positive one fails (infinite log ratio). Decay tails are decided on a
// two-period materialization; zero tails restrict the check to the
// explicit domain.
bool check_radial_loglip(const RadialProfile& profile, double eps,
                         double delta);

// Decides whether a step profile decays maximally, i.e. lies in the convex
// body of admissible noise shapes: nonnegative, nonincreasing, and
// rho(t + delta) = e^{-eps} rho(t) at every plateau cell within relative
// tol (right-open steps keep the profile lower semicontinuous once it is
// nonincreasing). The explicit domain must span whole periods.
bool check_maximal_decay(const RadialProfile& profile, double eps,
                         double delta, double tol = 1e-9);

// Radius by which a level set may grow when its level drops by the factor
// e^{-h}: delta * (ceil(h / eps) - 1), with near-integer h/eps snapped.
double enlargement_radius(double h, double eps, double delta);

// Checks {rho > lambda} enlarged by enlargement_radius(h) is contained in
// {rho > lambda e^{-h}} for every (lambda, h) pair, lambda > 0, h > 0.
// Level sets of the (possibly non-monotone) step profile are exact
// interval unions; containment is decided by interval arithmetic with
// 1-ulp-scale tolerance on boundary-exact cases.
bool check_levelset_enlargement(const RadialProfile& profile, double eps,
                                double delta,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& hs);

// Two-sided comparator bound for maximally-decaying normalized profiles:
// e^{-2 eps} phi(t) <= rho(t) <= e^{2 eps} phi(t) with
// phi(t) = (eps^n / (|B| n! delta^n)) e^{-eps t / delta}, checked on every
// plateau's closure (phi is monotone, so endpoint checks are exact).
// Requires check_maximal_decay to pass and unit mass; rejects otherwise.
bool laplace_sandwich_check(const RadialProfile& profile, double eps,
                            double delta, const NormSpec& norm);

// {r >= 0 : rho(r) > lambda} as an exact interval union, lambda > 0.
// Decay tails are materialized until the tail maximum falls below lambda.
GridSet superlevel_set(const RadialProfile& profile, double lambda);

}  // namespace staircase

#endif  // STAIRCASE_CORE_DPVERIFY_HPP_
