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

#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/errors.hpp"
#include "core/mathfn.hpp"

namespace staircase {

namespace {

double cost_at_gamma(double eps, double delta, const NormSpec& norm,
                     const CostSpec& cost, double gamma) {
  StaircaseParams params;
  params.eps = eps;
  params.delta = delta;
  params.norm = norm;
  params.gamma = gamma;
  return expected_cost_series(build_band_table(params), cost);
}

}  // namespace

GammaStar find_gamma_star(double eps, double delta, const NormSpec& norm,
                          const CostSpec& cost, int grid_points,
                          int refine_iters) {
  require(grid_points >= 3, ErrorCode::kInvalidArgument,
          "gamma grid needs at least 3 points");
  require(refine_iters >= 0, ErrorCode::kInvalidArgument,
          "refinement iteration count must be >= 0");

  GammaStar best;
  best.cost = std::numeric_limits<double>::infinity();
  auto consider = [&](double gamma) {
    double c = cost_at_gamma(eps, delta, norm, cost, gamma);
    if (c < best.cost) {
      best.gamma = gamma;
      best.cost = c;
    }
    return c;
  };

  int argmin = 0;
  double minval = std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_points; ++g) {
    double gamma = static_cast<double>(g) / static_cast<double>(grid_points - 1);
    double c = consider(gamma);
    if (c < minval) {
      minval = c;
      argmin = g;
    }
  }

  // Golden-section refinement confined to the cell around the grid minimum;
  // the objective is not assumed unimodal elsewhere.
  double step = 1.0 / static_cast<double>(grid_points - 1);
  double lo = std::max(0.0, (static_cast<double>(argmin) - 1.0) * step);
  double hi = std::min(1.0, (static_cast<double>(argmin) + 1.0) * step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = consider(x1);
  double f2 = consider(x2);
  for (int it = 0; it < refine_iters && (hi - lo) > 1e-6; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = consider(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = consider(x2);
    }
  }
  return best;
}

double laplace_baseline_cost(double eps, double delta, const NormSpec& norm,
                             LaplaceFlavor flavor, const CostSpec& cost) {
  validate(norm);
  validate(cost);
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  if (flavor == LaplaceFlavor::kProductL1) {
    require(norm.p == 1.0, ErrorCode::kInvalidArgument,
            "the product comparator prices an l1 magnitude; pair it with "
            "the l1 norm");
  }
  // Either flavor's magnitude is Gamma(n, b), b = delta / eps.
  const double n = static_cast<double>(norm.dim);
  const double b = delta / eps;
  switch (cost.kind) {
    case CostSpec::Kind::kPower:
      return std::pow(b, cost.q) *
             std::exp(std::lgamma(n + cost.q) - std::lgamma(n));
    case CostSpec::Kind::kThreshold:
      return gamma_q(n, cost.lambda / b);
    case CostSpec::Kind::kTruncated:
      // E[min(R, T)] = E[R 1{R < T}] + T P(R >= T).
      return n * b * gamma_p(n + 1.0, cost.cap / b) +
             cost.cap * gamma_q(n, cost.cap / b);
  }
  throw_error(ErrorCode::kInvalidArgument, "unknown cost kind");
}

std::vector<TradeoffRow> tradeoff_sweep(const std::vector<double>& eps_list,
                                        const std::vector<int>& dim_list,
                                        const NormSpec& norm,
                                        const CostSpec& cost, bool mc_check,
                                        std::uint64_t seed,
                                        std::int64_t mc_samples) {
  require(!eps_list.empty() && !dim_list.empty(), ErrorCode::kInvalidArgument,
          "sweep lists must be nonempty");
  std::vector<double> eps_sorted = eps_list;
  std::vector<int> dim_sorted = dim_list;
  std::sort(eps_sorted.begin(), eps_sorted.end());
  std::sort(dim_sorted.begin(), dim_sorted.end());

  std::vector<TradeoffRow> rows;
  rows.reserve(eps_sorted.size() * dim_sorted.size());
  std::uint64_t row_tag = 0x1000;  // distinct from the sampling shard tags
  for (double eps : eps_sorted) {
    for (int dim : dim_sorted) {
      NormSpec row_norm = norm;
      row_norm.dim = dim;
      GammaStar star = find_gamma_star(eps, 1.0, row_norm, cost);
      LaplaceFlavor flavor = (row_norm.p == 1.0) ? LaplaceFlavor::kProductL1
                                                 : LaplaceFlavor::kRadial;
      TradeoffRow row;
      row.eps = eps;
      row.dim = dim;
      row.p = row_norm.p;
      row.gamma_star = star.gamma;
      row.staircase_cost = star.cost;
      row.laplace_cost = laplace_baseline_cost(eps, 1.0, row_norm, flavor,
                                               cost);
      row.cost_kind = cost.kind;
      if (mc_check) {
        StaircaseParams params;
        params.eps = eps;
        params.delta = 1.0;
        params.norm = row_norm;
        params.gamma = star.gamma;
        BandTable table = build_band_table(params);
        McEstimate est = expected_cost_mc(table, cost, mix_seed(seed, row_tag),
                                          mc_samples);
        row.mc_checked = true;
        row.mc_mean = est.mean;
        row.mc_stderr = est.stderr_;
        if (std::abs(est.mean - star.cost) > 3.0 * est.stderr_ &&
            std::abs(est.mean - star.cost) > 1e-12) {
          std::ostringstream msg;
          msg << "sweep cross-check failed at eps=" << eps << " dim=" << dim
              << ": series " << star.cost << " vs Monte Carlo " << est.mean
              << " +/- " << est.stderr_;
          throw_error(ErrorCode::kInternal, msg.str());
        }
      }
      rows.push_back(row);
      ++row_tag;
    }
  }
  return rows;
}

}  // namespace staircase
