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

#ifndef STAIRCASE_CORE_REARRANGE_HPP
#define STAIRCASE_CORE_REARRANGE_HPP

#include <functional>
#include <vector>

#include "core/norms.hpp"
#include "core/profile.hpp"

namespace staircase {

// Decreasing rearrangement of a radial profile in `dim` dimensions: every
// superlevel set keeps its volume but becomes a centered ball. Compactly
// supported profiles rearrange in any dimension. Profiles with a geometric
// tail stay exactly representable only in one dimension and only when the
// sorted tail period cannot interleave with its own scaled copies; other
// inputs are rejected with kPreconditionFailed.
RadialProfile rearrange_profile(const RadialProfile& profile, int dim);

// The pivot extension of rho at pivot y: agrees with rho on [y, y + delta),
// climbs at the maximal rate e^{eps} per delta step below y, and decays at
// the maximal rate e^{-eps} per delta step above y + delta. The input must
// be nonincreasing and must never fall by a factor worse than e^{-eps}
// across any distance shorter than delta (zero against positive counts as
// falling too fast). The output's explicit domain is padded to a whole
// multiple of delta so downstream decay checks apply directly.
RadialProfile make_rho_y(const RadialProfile& rho, double y, double eps,
                         double delta);

// Mass functional of a pivot extension: the radial moment of order dim - 1,
// i.e. the mass of the induced density in dim dimensions up to the constant
// surface factor.
double psi(const RadialProfile& rho_y, int dim);

struct MassMatch {
  double y = 0.0;         // pivot where the extension matches the mass
  RadialProfile profile;  // the matching extension

  MassMatch(double y_in, RadialProfile profile_in);
};

// Finds y >= 0 such that the pivot extension of rho at y has the same mass
// as rho itself (relative tolerance tol). Inputs already decaying at the
// maximal rate short-circuit to y = 0. The extension's mass is continuous
// in y and reaches the target because the admissibility precondition caps
// how fast rho may decay.
MassMatch find_mass_matching_y(const RadialProfile& rho, int dim, double eps,
                               double delta, double tol = 1e-12);

// A cumulative distribution function of a scalar statistic (for us: the
// norm of the noise), evaluated lazily, plus the breakpoints that suffice
// to compare two piecewise-smooth CDFs.
struct CdfEvaluator {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
};

// CDF of the norm of a noise vector whose density has radial profile rho.
CdfEvaluator profile_cdf_evaluator(const RadialProfile& rho,
                                   const NormSpec& norm);

// True iff f(t) >= g(t) (within a small absolute slack) at every breakpoint
// of either evaluator, i.e. the statistic under f is stochastically
// dominated by the one under g. Breakpoint checks are exact for the
// piecewise-constant densities used here because the difference of two such
// CDFs is monotone between consecutive breakpoints. Rejects evaluators that
// fail to be nondecreasing along their own breakpoints.
bool check_domination(const CdfEvaluator& f, const CdfEvaluator& g);

struct MixtureComponent {
  double gamma = 0.0;
  double weight = 0.0;
};

// Writes a maximally-decaying profile whose first-period breakpoints lie on
// the grid {i * delta / gamma_grid} as a convex mixture of staircase
// profiles with gamma on that grid (gamma = 0 is represented by its
// identical gamma = 1 twin). Throws kDecompositionFailure when no
// nonnegative mixture reproduces the profile to relative accuracy 1e-8.
std::vector<MixtureComponent> decompose_staircase_mixture(
    const RadialProfile& rho, const NormSpec& norm, int gamma_grid);

}  // namespace staircase

#endif  // STAIRCASE_CORE_REARRANGE_HPP
