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

#include "core/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "core/dpverify.hpp"
#include "core/errors.hpp"
#include "core/mathfn.hpp"
#include "core/nnls.hpp"
#include "core/staircase.hpp"

namespace staircase {

namespace {

struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  double v = 0.0;
};

std::vector<Piece> explicit_pieces(const RadialProfile& p) {
  const std::vector<double>& b = p.breakpoints();
  const std::vector<double>& v = p.values();
  std::vector<Piece> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back({b[i], b[i + 1], v[i]});
  }
  return out;
}

// Appends a plateau [*, hi) of value v to a breakpoint/value chain, merging
// runs of equal values and dropping pieces that collapsed to zero width.
void push_plateau(std::vector<double>* bp, std::vector<double>* vals,
                  double hi, double v) {
  if (hi <= bp->back()) return;
  if (!vals->empty() && vals->back() == v) {
    bp->back() = hi;
    return;
  }
  bp->push_back(hi);
  vals->push_back(v);
}

// Sorts positive pieces by value (descending) and lays them out from the
// origin, converting accumulated level-set volume back to a radius.
RadialProfile lay_out_decreasing(std::vector<Piece> pieces, int dim,
                                 double fallback_end) {
  const double n = static_cast<double>(dim);
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.v > b.v; });
  std::vector<double> bp = {0.0};
  std::vector<double> vals;
  KahanSum vol;
  for (const Piece& pc : pieces) {
    vol.add(pow_diff(pc.lo, pc.hi, n));
    double r = dim == 1 ? vol.value() : std::pow(vol.value(), 1.0 / n);
    push_plateau(&bp, &vals, r, pc.v);
  }
  if (vals.empty()) {
    return RadialProfile({0.0, fallback_end}, {0.0}, RadialProfile::Tail::kZero);
  }
  return RadialProfile(std::move(bp), std::move(vals),
                       RadialProfile::Tail::kZero);
}

}  // namespace

RadialProfile rearrange_profile(const RadialProfile& profile, int dim) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  const double fallback_end = profile.end() > 0.0 ? profile.end() : 1.0;

  std::vector<Piece> period;
  double min_p = std::numeric_limits<double>::infinity();
  double max_p = 0.0;
  if (profile.tail() == RadialProfile::Tail::kDecay) {
    const double start = profile.end() - profile.tail_delta();
    for (const Piece& pc : explicit_pieces(profile)) {
      if (pc.hi <= start) continue;
      period.push_back({std::max(pc.lo, start), pc.hi, pc.v});
      min_p = std::min(min_p, pc.v);
      max_p = std::max(max_p, pc.v);
    }
  }

  if (profile.tail() == RadialProfile::Tail::kZero || max_p == 0.0) {
    // With no (or an identically zero) tail only the explicit positive
    // pieces matter; they sort in any dimension.
    std::vector<Piece> pos;
    for (const Piece& pc : explicit_pieces(profile)) {
      if (pc.v > 0.0) pos.push_back(pc);
    }
    return lay_out_decreasing(std::move(pos), dim, fallback_end);
  }

  // A geometric tail sorts into octave blocks: period k holds the sorted
  // period values scaled by e^{-k eps}. That layout is again a profile with
  // a geometric tail only if radial widths survive the rearrangement
  // (dimension one) and consecutive octaves cannot interleave.
  require(dim == 1, ErrorCode::kPreconditionFailed,
          "rearranging a geometric-tail profile is only representable in "
          "one dimension");
  const double eps = profile.tail_eps();
  const double delta = profile.tail_delta();
  require(min_p > 0.0, ErrorCode::kPreconditionFailed,
          "rearranging a geometric tail requires a strictly positive tail "
          "period");
  require(min_p >= max_p * std::exp(-eps) * (1.0 - 1e-12),
          ErrorCode::kPreconditionFailed,
          "rearranged tail periods would interleave; the smallest tail "
          "value must stay above the scaled largest one");

  // Make explicit every period whose values can still exceed some explicit
  // positive value; past that the remaining octaves are strictly smaller
  // than everything already laid out.
  double min_pos_explicit = std::numeric_limits<double>::infinity();
  for (const Piece& pc : explicit_pieces(profile)) {
    if (pc.v > 0.0) min_pos_explicit = std::min(min_pos_explicit, pc.v);
  }
  int k0 = 0;
  while (max_p * std::exp(-(k0 + 1) * eps) >
         min_pos_explicit * (1.0 + 1e-12)) {
    ++k0;
    require(k0 <= 200000, ErrorCode::kInternal,
            "tail materialization failed to terminate");
  }
  RadialProfile mat = profile.materialized(k0);
  std::vector<Piece> pos;
  for (const Piece& pc : explicit_pieces(mat)) {
    if (pc.v > 0.0) pos.push_back(pc);
  }
  RadialProfile head = lay_out_decreasing(std::move(pos), 1, fallback_end);

  std::vector<double> bp = head.breakpoints();
  std::vector<double> vals = head.values();
  const double w0 = bp.back();
  // Append the next octave explicitly; the decay tail replicates it.
  std::stable_sort(period.begin(), period.end(),
                   [](const Piece& a, const Piece& b) { return a.v > b.v; });
  const double scale = std::exp(-(k0 + 1) * eps);
  KahanSum off;
  for (std::size_t j = 0; j < period.size(); ++j) {
    off.add(period[j].hi - period[j].lo);
    double hi = j + 1 == period.size() ? w0 + delta : w0 + off.value();
    push_plateau(&bp, &vals, hi, period[j].v * scale);
  }
  return RadialProfile(std::move(bp), std::move(vals),
                       RadialProfile::Tail::kDecay, eps, delta);
}

namespace {

// Admissibility for the pivot construction: nonincreasing, and never
// falling by a factor worse than e^{-eps} across any distance shorter than
// delta (a zero value within delta of a positive one counts as falling too
// fast). A window spanning the explicit domain plus enough tail periods
// decides the whole line: a far pair shifts down by whole tail periods into
// the window, scaling both values by the same geometric factor and keeping
// the distance, so the ratio bound is unchanged.
void require_pivot_admissible(const RadialProfile& rho, double eps,
                              double delta) {
  RadialProfile w = rho;
  if (rho.tail() == RadialProfile::Tail::kDecay) {
    int periods =
        static_cast<int>(ceil_snapped(delta / rho.tail_delta())) + 2;
    w = rho.materialized(periods);
  }
  std::vector<Piece> pieces = explicit_pieces(w);
  if (rho.tail() == RadialProfile::Tail::kZero) {
    pieces.push_back({w.end(), w.end() + delta, 0.0});
  }
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    require(pieces[i + 1].v <= pieces[i].v * (1.0 + 1e-12),
            ErrorCode::kPreconditionFailed,
            "pivot extension requires a nonincreasing profile");
  }
  const double bound = std::exp(eps) * (1.0 + 1e-9);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].v == 0.0) continue;
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      double gap = pieces[j].lo - pieces[i].hi;
      // Pieces are half-open, so a gap of exactly one period admits no
      // point pair within single-hop range; breakpoints reached through
      // different arithmetic paths can land an ulp short of that, which
      // must not drag an exempt pair under the one-hop bound.
      if (gap >= delta * (1.0 - 1e-12)) break;
      require(pieces[j].v > 0.0, ErrorCode::kPreconditionFailed,
              "pivot extension requires the profile to stay positive "
              "within one period of a positive value");
      require(pieces[i].v <= pieces[j].v * bound,
              ErrorCode::kPreconditionFailed,
              "pivot extension requires the profile to fall no faster "
              "than e^{-eps} per period");
    }
  }
}

}  // namespace

RadialProfile make_rho_y(const RadialProfile& rho, double y, double eps,
                         double delta) {
  require(std::isfinite(eps) && eps > 0.0, ErrorCode::kInvalidArgument,
          "eps must be positive and finite");
  require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "delta must be positive and finite");
  require(std::isfinite(y) && y >= 0.0, ErrorCode::kInvalidArgument,
          "the pivot must be >= 0 and finite");
  require_pivot_admissible(rho, eps, delta);

  RadialProfile w = rho;
  if (rho.tail() == RadialProfile::Tail::kDecay && y + delta > rho.end()) {
    int periods = static_cast<int>(
                      ceil_snapped((y + delta - rho.end()) / rho.tail_delta())) +
                  1;
    w = rho.materialized(periods);
  }

  // Plateau structure of rho on the window [y, y + delta). Values are read
  // at the left cut, which under the right-open convention is exact.
  std::vector<Piece> win;
  {
    std::vector<double> cuts = {y};
    for (double b : w.breakpoints()) {
      if (b > y && b < y + delta) cuts.push_back(b);
    }
    cuts.push_back(y + delta);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c + 1] <= cuts[c]) continue;
      win.push_back({cuts[c], cuts[c + 1], w(cuts[c])});
    }
  }

  const double m = ceil_snapped((y + delta) / delta);
  const double end = m * delta;
  require(m <= 2e7, ErrorCode::kInvalidArgument,
          "pivot too large: the extension would need too many periods");
  const int jmin = -static_cast<int>(ceil_snapped(y / delta));

  std::vector<Piece> tiles;
  for (int j = jmin;; ++j) {
    double shift = j * delta;
    if (y + shift >= end) break;
    double f = std::exp(-j * eps);
    require(std::isfinite(f), ErrorCode::kInvalidArgument,
            "pivot extension overflows the double range");
    for (const Piece& pc : win) {
      double lo = pc.lo + shift;
      double hi = pc.hi + shift;
      if (hi <= 0.0 || lo >= end) continue;
      tiles.push_back({std::max(lo, 0.0), std::min(hi, end), pc.v * f});
    }
  }
  std::sort(tiles.begin(), tiles.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });

  std::vector<double> bp = {0.0};
  std::vector<double> vals;
  for (const Piece& t : tiles) push_plateau(&bp, &vals, t.hi, t.v);
  bp.back() = end;  // the tiling covers [0, end) up to rounding
  return RadialProfile(std::move(bp), std::move(vals),
                       RadialProfile::Tail::kDecay, eps, delta);
}

double psi(const RadialProfile& rho_y, int dim) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  return rho_y.radial_moment(dim - 1);
}

MassMatch::MassMatch(double y_in, RadialProfile profile_in)
    : y(y_in), profile(std::move(profile_in)) {}

MassMatch find_mass_matching_y(const RadialProfile& rho, int dim, double eps,
                               double delta, double tol) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(std::isfinite(tol) && tol > 0.0, ErrorCode::kInvalidArgument,
          "tolerance must be positive and finite");
  require_pivot_admissible(rho, eps, delta);
  const double target = rho.radial_moment(dim - 1);
  require(std::isfinite(target) && target > 0.0, ErrorCode::kInvalidArgument,
          "mass matching needs a profile with positive finite mass");

  if (rho.tail() == RadialProfile::Tail::kDecay) {
    double periods = rho.end() / delta;
    bool whole =
        std::abs(periods - std::round(periods)) <= 1e-9 * std::fmax(1.0, periods);
    if (whole && check_maximal_decay(rho, eps, delta)) {
      // Already maximally decaying: the pivot sits at zero and the
      // extension is the profile itself.
      return MassMatch(0.0, make_rho_y(rho, 0.0, eps, delta));
    }
  }

  auto psi_at = [&](double yy) {
    return psi(make_rho_y(rho, yy, eps, delta), dim);
  };

  double lo = 0.0;
  double psi_lo = psi_at(0.0);
  if (std::abs(psi_lo - target) <= tol * target) {
    return MassMatch(0.0, make_rho_y(rho, 0.0, eps, delta));
  }
  require(psi_lo < target, ErrorCode::kInternal,
          "pivot extension at zero exceeded the profile mass");
  double hi = delta;
  double psi_hi = psi_at(hi);
  int doublings = 0;
  while (psi_hi < target) {
    lo = hi;
    hi *= 2.0;
    psi_hi = psi_at(hi);
    require(++doublings <= 60, ErrorCode::kInternal,
            "mass matching failed to bracket the pivot");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double pm = psi_at(mid);
    if (std::abs(pm - target) <= tol * target) {
      return MassMatch(mid, make_rho_y(rho, mid, eps, delta));
    }
    if (pm < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::fmax(hi, 1.0)) {
      break;
    }
  }
  throw_error(ErrorCode::kInternal, "mass matching failed to converge");
}

CdfEvaluator profile_cdf_evaluator(const RadialProfile& rho,
                                   const NormSpec& norm) {
  validate(norm);
  auto shared = std::make_shared<RadialProfile>(rho);
  CdfEvaluator out;
  out.eval = [shared, norm](double r) {
    return profile_radial_cdf(*shared, norm, r);
  };
  RadialProfile w = rho;
  if (rho.tail() == RadialProfile::Tail::kDecay) {
    // Horizon past which the survival mass is far below the comparison
    // slack; the polynomial shell factor needs the log correction.
    const double n = static_cast<double>(norm.dim);
    const double te = rho.tail_eps();
    double k = std::ceil(45.0 / te);
    while ((n - 1.0) * std::log(std::fmax(k * te, 2.0)) - k * te -
                   std::lgamma(n) >
               -45.0 &&
           k < 50000.0) {
      k += 1.0;
    }
    w = rho.materialized(static_cast<int>(k) + 2);
  }
  out.breakpoints = w.breakpoints();
  return out;
}

bool check_domination(const CdfEvaluator& f, const CdfEvaluator& g) {
  require(static_cast<bool>(f.eval) && static_cast<bool>(g.eval),
          ErrorCode::kInvalidArgument, "cdf evaluator is empty");
  std::vector<double> grid;
  grid.reserve(f.breakpoints.size() + g.breakpoints.size());
  grid.insert(grid.end(), f.breakpoints.begin(), f.breakpoints.end());
  grid.insert(grid.end(), g.breakpoints.begin(), g.breakpoints.end());
  require(!grid.empty(), ErrorCode::kInvalidArgument,
          "cdf evaluators carry no breakpoints");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double pf = -std::numeric_limits<double>::infinity();
  double pg = pf;
  for (double t : grid) {
    double vf = f.eval(t);
    double vg = g.eval(t);
    require(std::isfinite(vf) && std::isfinite(vg),
            ErrorCode::kInvalidArgument,
            "cdf evaluator produced a non-finite value");
    require(vf >= pf - 1e-12 && vg >= pg - 1e-12,
            ErrorCode::kInvalidArgument,
            "cdf evaluator is not nondecreasing");
    pf = std::fmax(pf, vf);
    pg = std::fmax(pg, vg);
    if (vf < vg - 1e-14) return false;
  }
  return true;
}

std::vector<MixtureComponent> decompose_staircase_mixture(
    const RadialProfile& rho, const NormSpec& norm, int gamma_grid) {
  validate(norm);
  require(gamma_grid >= 1 && gamma_grid <= 4096, ErrorCode::kInvalidArgument,
          "gamma grid size must be in [1, 4096]");
  require(rho.tail() == RadialProfile::Tail::kDecay,
          ErrorCode::kPreconditionFailed,
          "mixture decomposition needs a geometric-tail profile");
  const double eps = rho.tail_eps();
  const double delta = rho.tail_delta();
  require(check_maximal_decay(rho, eps, delta), ErrorCode::kPreconditionFailed,
          "mixture decomposition needs a maximally decaying profile");

  const int g = gamma_grid;
  for (double b : rho.breakpoints()) {
    if (b <= 0.0 || b >= delta) continue;
    double q = b * g / delta;
    require(std::abs(q - std::round(q)) <= 1e-9 * std::fmax(1.0, q),
            ErrorCode::kPreconditionFailed,
            "profile breakpoints must lie on the gamma grid");
  }

  // One sample row per grid cell of the first period; the decay constraint
  // makes first-period equality global.
  std::vector<double> rhs(g, 0.0);
  double rhs_max = 0.0;
  for (int c = 0; c < g; ++c) {
    double t = (c + 0.5) * delta / g;
    rhs[c] = rho(t);
    rhs_max = std::fmax(rhs_max, rhs[c]);
  }
  require(rhs_max > 0.0, ErrorCode::kInvalidArgument,
          "cannot decompose an identically zero profile");

  std::vector<double> basis(static_cast<std::size_t>(g) * g, 0.0);
  for (int i = 1; i <= g; ++i) {
    StaircaseParams sp;
    sp.eps = eps;
    sp.delta = delta;
    sp.norm = norm;
    sp.gamma = static_cast<double>(i) / g;
    RadialProfile prof = staircase_profile(build_band_table(sp));
    for (int c = 0; c < g; ++c) {
      double t = (c + 0.5) * delta / g;
      basis[static_cast<std::size_t>(i - 1) * g + c] = prof(t);
    }
  }

  std::vector<double> weights = nnls(basis, g, g, rhs);
  double worst = 0.0;
  for (int c = 0; c < g; ++c) {
    double recon = 0.0;
    for (int i = 0; i < g; ++i) {
      recon += weights[i] * basis[static_cast<std::size_t>(i) * g + c];
    }
    worst = std::fmax(worst, std::abs(recon - rhs[c]));
  }
  require(worst <= 1e-8 * rhs_max, ErrorCode::kDecompositionFailure,
          "profile is not a staircase mixture on the given gamma grid");

  std::vector<MixtureComponent> out;
  double wmax = 0.0;
  for (double wv : weights) wmax = std::fmax(wmax, wv);
  for (int i = 1; i <= g; ++i) {
    double wv = weights[i - 1];
    if (wv > 1e-12 * wmax) {
      out.push_back({static_cast<double>(i) / g, wv});
    }
  }
  return out;
}

}  // namespace staircase
