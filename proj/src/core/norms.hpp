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

#ifndef STAIRCASE_CORE_NORMS_HPP
#define STAIRCASE_CORE_NORMS_HPP

#include <vector>

#include "core/rng.hpp"

namespace staircase {

// An lp geometry on R^n. p may be std::numeric_limits<double>::infinity()
// for the max norm; finite p must satisfy p >= 1.
struct NormSpec {
  int dim = 1;
  double p = 1.0;
};

// Rejects the spec unless dim >= 1 and p >= 1 (inf allowed).
void validate(const NormSpec& spec);

// ||x||_p, overflow-safe (scaled by the max coordinate).
double norm(const NormSpec& spec, const double* x);
double norm(const NormSpec& spec, const std::vector<double>& x);

// Volume of the radius-r lp ball: V(r) = C_n r^n with
// C_n = (2 Gamma(1+1/p))^n / Gamma(1+n/p), via log-gamma.
double unit_ball_volume(const NormSpec& spec);
double log_unit_ball_volume(const NormSpec& spec);
double ball_volume(const NormSpec& spec, double r);

// Draws a direction from the cone measure on the unit lp sphere: coordinates
// are generalized-Gaussian G_i with density proportional to exp(-|t|^p)
// (|G_i| = W^{1/p}, W ~ Gamma(1/p), uniform sign; uniform on [-1,1] when
// p = inf), then G is normalized by ||G||_p with the normalization
// re-applied once. Exponential and normal coordinates are used directly for
// p = 1 and p = 2 where the recipe reduces to them.
void sample_direction(const NormSpec& spec, Rng& rng, double* out);
std::vector<double> sample_direction(const NormSpec& spec, Rng& rng);

}  // namespace staircase

#endif  // STAIRCASE_CORE_NORMS_HPP
