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

#include "core/profile.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/mathfn.hpp"

namespace staircase {

namespace {

struct Piece {
  double lo;
  double hi;
  double value;
};

}  // namespace

RadialProfile::RadialProfile(std::vector<double> breakpoints,
                             std::vector<double> values, Tail tail, double eps,
                             double delta)
    : b_(std::move(breakpoints)),
      v_(std::move(values)),
      tail_(tail),
      eps_(eps),
      delta_(delta) {
  require(b_.size() == v_.size() + 1 && !v_.empty(),
          ErrorCode::kInvalidArgument,
          "profile needs k+1 breakpoints for k plateaus, k >= 1");
  require(b_.front() == 0.0, ErrorCode::kInvalidArgument,
          "profile breakpoints must start at 0");
  for (std::size_t i = 0; i + 1 < b_.size(); ++i) {
    require(std::isfinite(b_[i + 1]) && b_[i] < b_[i + 1],
            ErrorCode::kInvalidArgument,
            "profile breakpoints must be strictly ascending and finite");
  }
  for (double v : v_) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::kInvalidArgument,
            "profile values must be finite and nonnegative");
  }
  if (tail_ == Tail::kDecay) {
    require(eps_ > 0.0 && delta_ > 0.0, ErrorCode::kInvalidArgument,
            "decay tail requires eps > 0 and delta > 0");
    require(b_.back() >= delta_, ErrorCode::kInvalidArgument,
            "decay tail requires at least one full explicit period");
  }
}

namespace {

double eval_explicit(const std::vector<double>& b, const std::vector<double>& v,
                     double r) {
  auto it = std::upper_bound(b.begin(), b.end(), r);
  std::size_t idx = static_cast<std::size_t>(it - b.begin()) - 1;
  if (idx >= v.size()) idx = v.size() - 1;
  return v[idx];
}

// Plateau pieces of [lo, hi) clipped out of the profile's explicit domain.
std::vector<Piece> clipped_pieces(const std::vector<double>& b,
                                  const std::vector<double>& v, double lo,
                                  double hi) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double a = std::max(b[i], lo);
    double c = std::min(b[i + 1], hi);
    if (a < c) out.push_back({a, c, v[i]});
  }
  return out;
}

}  // namespace

double RadialProfile::operator()(double r) const {
  require(r >= 0.0 && std::isfinite(r), ErrorCode::kInvalidArgument,
          "profile argument must be finite and >= 0");
  if (r < b_.back()) return eval_explicit(b_, v_, r);
  if (tail_ == Tail::kZero) return 0.0;
  double k = std::floor((r - b_.back()) / delta_) + 1.0;
  double rp = r - k * delta_;
  if (rp >= b_.back()) {
    rp -= delta_;
    k += 1.0;
  } else if (rp < b_.back() - delta_) {
    rp += delta_;
    k -= 1.0;
  }
  rp = std::clamp(rp, b_.back() - delta_, std::nextafter(b_.back(), 0.0));
  return std::exp(-k * eps_) * eval_explicit(b_, v_, rp);
}

double RadialProfile::radial_moment(int j) const {
  require(j >= 0, ErrorCode::kInvalidArgument, "moment order must be >= 0");
  const double s = static_cast<double>(j) + 1.0;
  KahanSum acc;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] > 0.0) acc.add(v_[i] * pow_diff(b_[i], b_[i + 1], s) / s);
  }
  if (tail_ == Tail::kZero) return acc.value();
  const std::vector<Piece> period =
      clipped_pieces(b_, v_, b_.back() - delta_, b_.back());
  int small_terms = 0;
  for (int k = 1; k <= 10000000; ++k) {
    double shift = static_cast<double>(k) * delta_;
    double term = 0.0;
    for (const Piece& pc : period) {
      if (pc.value > 0.0) {
        term += pc.value * pow_diff(pc.lo + shift, pc.hi + shift, s) / s;
      }
    }
    term *= std::exp(-static_cast<double>(k) * eps_);
    acc.add(term);
    if (term <= acc.value() * 1e-17) {
      if (++small_terms >= 2) return acc.value();
    } else {
      small_terms = 0;
    }
  }
  throw_error(ErrorCode::kDivergentSeries,
              "profile tail moment did not converge");
}

double RadialProfile::partial_radial_moment(int j, double r) const {
  require(j >= 0, ErrorCode::kInvalidArgument, "moment order must be >= 0");
  require(r >= 0.0 && std::isfinite(r), ErrorCode::kInvalidArgument,
          "moment limit must be finite and >= 0");
  const double s = static_cast<double>(j) + 1.0;
  KahanSum acc;
  for (const Piece& pc : clipped_pieces(b_, v_, 0.0, std::min(r, b_.back()))) {
    if (pc.value > 0.0) acc.add(pc.value * pow_diff(pc.lo, pc.hi, s) / s);
  }
  if (tail_ == Tail::kZero || r <= b_.back()) return acc.value();
  const std::vector<Piece> period =
      clipped_pieces(b_, v_, b_.back() - delta_, b_.back());
  int small_terms = 0;
  for (int k = 1;; ++k) {
    double shift = static_cast<double>(k) * delta_;
    double lo_edge = b_.back() + shift - delta_;
    if (lo_edge >= r) break;
    double term = 0.0;
    for (const Piece& pc : period) {
      double hi = std::min(pc.hi + shift, r);
      if (pc.value > 0.0 && pc.lo + shift < hi) {
        term += pc.value * pow_diff(pc.lo + shift, hi, s) / s;
      }
    }
    term *= std::exp(-static_cast<double>(k) * eps_);
    acc.add(term);
    if (term <= acc.value() * 1e-17) {
      if (++small_terms >= 2) break;
    } else {
      small_terms = 0;
    }
    require(k < 10000000, ErrorCode::kDivergentSeries,
            "profile tail moment did not converge");
  }
  return acc.value();
}

RadialProfile RadialProfile::materialized(int periods) const {
  require(periods >= 0, ErrorCode::kInvalidArgument,
          "periods must be >= 0");
  if (tail_ == Tail::kZero || periods == 0) return *this;
  std::vector<double> nb = b_;
  std::vector<double> nv = v_;
  const std::vector<Piece> period =
      clipped_pieces(b_, v_, b_.back() - delta_, b_.back());
  for (int k = 1; k <= periods; ++k) {
    double shift = static_cast<double>(k) * delta_;
    double decay = std::exp(-static_cast<double>(k) * eps_);
    for (const Piece& pc : period) {
      nb.push_back(pc.hi + shift);
      nv.push_back(pc.value * decay);
    }
  }
  return RadialProfile(std::move(nb), std::move(nv), Tail::kDecay, eps_,
                       delta_);
}

RadialProfile RadialProfile::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), ErrorCode::kInvalidArgument,
          "scale factor must be positive and finite");
  std::vector<double> nv = v_;
  for (double& v : nv) v *= c;
  return RadialProfile(b_, std::move(nv), tail_, eps_, delta_);
}

double profile_mass(const RadialProfile& rho, const NormSpec& norm) {
  validate(norm);
  return unit_ball_volume(norm) * static_cast<double>(norm.dim) *
         rho.radial_moment(norm.dim - 1);
}

double profile_radial_cdf(const RadialProfile& rho, const NormSpec& norm,
                          double r) {
  double mass = profile_mass(rho, norm);
  require(mass > 0.0, ErrorCode::kPreconditionFailed,
          "profile has zero mass");
  return unit_ball_volume(norm) * static_cast<double>(norm.dim) *
         rho.partial_radial_moment(norm.dim - 1, r) / mass;
}

double profile_radial_quantile(const RadialProfile& rho, const NormSpec& norm,
                               double u) {
  validate(norm);
  require(u >= 0.0 && u <= 1.0, ErrorCode::kInvalidArgument,
          "quantile must lie in [0, 1]");
  const double n = static_cast<double>(norm.dim);
  const double total = rho.radial_moment(norm.dim - 1);
  require(total > 0.0, ErrorCode::kPreconditionFailed,
          "profile has zero mass");
  const double target = u * total;

  const std::vector<double>& b = rho.breakpoints();
  const std::vector<double>& v = rho.values();
  KahanSum prefix;
  auto invert_piece = [&](double lo, double hi, double value) {
    double m = value * pow_diff(lo, hi, n) / n;
    if (value > 0.0 && prefix.value() + m >= target) {
      double frac = (target - prefix.value()) / m;
      return shell_quantile(lo, hi, n, std::clamp(frac, 0.0, 1.0));
    }
    prefix.add(m);
    return -1.0;
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r = invert_piece(b[i], b[i + 1], v[i]);
    if (r >= 0.0) return r;
  }
  if (rho.tail() == RadialProfile::Tail::kZero) return b.back();
  const double delta = rho.tail_delta();
  const double eps = rho.tail_eps();
  std::vector<Piece> period = clipped_pieces(b, v, b.back() - delta, b.back());
  double edge = b.back();
  for (int k = 1; k <= 10000000; ++k) {
    double shift = static_cast<double>(k) * delta;
    double decay = std::exp(-static_cast<double>(k) * eps);
    double before = prefix.value();
    for (const Piece& pc : period) {
      double r = invert_piece(pc.lo + shift, pc.hi + shift, pc.value * decay);
      if (r >= 0.0) return r;
      edge = pc.hi + shift;
    }
    // Residual mass below resolution: u is (numerically) 1.
    if (prefix.value() - before <= total * 1e-16) return edge;
  }
  throw_error(ErrorCode::kDivergentSeries,
              "profile tail quantile did not converge");
}

}  // namespace staircase
