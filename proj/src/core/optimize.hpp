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

#ifndef STAIRCASE_CORE_OPTIMIZE_HPP_
#define STAIRCASE_CORE_OPTIMIZE_HPP_

#include <cstdint>
#include <vector>

#include "core/cost.hpp"

namespace staircase {

struct GammaStar {
  double gamma = 0.0;
  double cost = 0.0;
};

// Minimizes the exact mean cost over gamma in [0, 1]: evaluates a uniform
// grid of `grid_points` values, then golden-section refinement inside the
// cell bracketing the grid minimum (the objective is not assumed unimodal,
// so refinement never leaves that cell). Stops refining once the interval
// is narrower than 1e-6 or after refine_iters evaluations. The returned
// pair is the best point ever evaluated, so its cost is certified <= the
// cost at every grid point.
GammaStar find_gamma_star(double eps, double delta, const NormSpec& norm,
                          const CostSpec& cost, int grid_points = 101,
                          int refine_iters = 48);

// Which Laplace-style comparator to price.
enum class LaplaceFlavor {
  // n independent Laplace(delta/eps) coordinates; the l1 norm of the vector
  // is Gamma(n, delta/eps)-distributed. Only meaningful when the ambient
  // norm is l1.
  kProductL1,
  // Radial law with density proportional to e^{-eps r / delta} in the
  // ambient norm ball geometry; the radius is Gamma(n, delta/eps) for every
  // lp. Coincides with the product flavor at n = 1.
  kRadial,
};

// Mean cost of the comparator's noise magnitude. Both flavors share the
// Gamma(n, delta/eps) radial law, so: power q -> (delta/eps)^q
// Gamma(n+q)/Gamma(n); threshold lambda -> upper regularized gamma
// Q(n, lambda eps / delta); truncated cap -> exact incomplete-gamma split.
// Throws when kProductL1 is paired with a norm other than l1.
double laplace_baseline_cost(double eps, double delta, const NormSpec& norm,
                             LaplaceFlavor flavor, const CostSpec& cost);

struct TradeoffRow {
  double eps = 0.0;
  int dim = 0;
  double p = 1.0;
  double gamma_star = 0.0;
  double staircase_cost = 0.0;
  double laplace_cost = 0.0;
  CostSpec::Kind cost_kind = CostSpec::Kind::kPower;
  // Filled only when the sweep runs its Monte Carlo cross-check.
  bool mc_checked = false;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
};

// One row per (eps, dim) pair, sorted by (eps, dim): optimal gamma, its
// exact cost, and the matched Laplace comparator cost (product flavor when
// p = 1, radial otherwise). With mc_check, each staircase cost is
// cross-validated by a Monte Carlo run at `mc_samples` draws and the row
// records the estimate; disagreement beyond 3 standard errors throws.
std::vector<TradeoffRow> tradeoff_sweep(const std::vector<double>& eps_list,
                                        const std::vector<int>& dim_list,
                                        const NormSpec& norm,
                                        const CostSpec& cost, bool mc_check,
                                        std::uint64_t seed = 0,
                                        std::int64_t mc_samples = 200000);

}  // namespace staircase

#endif  // STAIRCASE_CORE_OPTIMIZE_HPP_
