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

#ifndef STAIRCASE_CORE_PROFILE_HPP
#define STAIRCASE_CORE_PROFILE_HPP

#include <vector>

#include "core/norms.hpp"

namespace staircase {

// Radial step function rho on [0, inf): value v_j on [b_j, b_{j+1})
// (right-open convention; the value at a breakpoint is the plateau that
// starts there). Beyond the last explicit breakpoint the profile either
// vanishes (Tail::kZero) or extends by exact maximal decay
// rho(r) = e^{-k eps} rho(r - k delta) with r - k delta brought into the
// last explicit period [end-delta, end) (Tail::kDecay).
class RadialProfile {
 public:
  enum class Tail { kZero, kDecay };

  // breakpoints.size() == values.size() + 1, breakpoints[0] == 0, strictly
  // ascending; values nonnegative. For kDecay: eps > 0, delta > 0, and the
  // explicit domain must span at least one full period (end >= delta).
  RadialProfile(std::vector<double> breakpoints, std::vector<double> values,
                Tail tail = Tail::kZero, double eps = 0.0, double delta = 0.0);

  double operator()(double r) const;

  const std::vector<double>& breakpoints() const { return b_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t plateau_count() const { return v_.size(); }
  double end() const { return b_.back(); }
  Tail tail() const { return tail_; }
  double tail_eps() const { return eps_; }
  double tail_delta() const { return delta_; }

  // integral_0^inf r^j rho(r) dr, exact plateau-wise; the decay tail is a
  // geometric series summed to machine precision.
  double radial_moment(int j) const;

  // integral_0^r s^j rho(s) ds.
  double partial_radial_moment(int j, double r) const;

  // Same profile with `periods` extra decay periods made explicit
  // (identity for zero-tail profiles).
  RadialProfile materialized(int periods) const;

  // Scales all values by c > 0.
  RadialProfile scaled(double c) const;

 private:
  std::vector<double> b_;
  std::vector<double> v_;
  Tail tail_;
  double eps_;
  double delta_;
};

// Total mass of the density x -> rho(||x||) on R^n under the given lp
// geometry: |B| * n * integral r^{n-1} rho(r) dr.
double profile_mass(const RadialProfile& rho, const NormSpec& norm);

// CDF of ||X|| for X distributed with density rho(||x||)/profile_mass:
// F(r) = |B| n int_0^r s^{n-1} rho(s) ds / mass.
double profile_radial_cdf(const RadialProfile& rho, const NormSpec& norm,
                          double r);

// Inverse of profile_radial_cdf: the radius at quantile u in [0, 1],
// resolved exactly within each plateau via the shell quantile. Decay tails
// are walked until the residual mass is below machine precision; u = 1 on
// an infinite tail returns the last walked breakpoint.
double profile_radial_quantile(const RadialProfile& rho, const NormSpec& norm,
                               double u);

}  // namespace staircase

#endif  // STAIRCASE_CORE_PROFILE_HPP
