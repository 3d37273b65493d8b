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

#include "core/norms.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace staircase {

void validate(const NormSpec& spec) {
  if (spec.dim < 1) {
    throw_error(ErrorCode::kInvalidArgument, "norm dimension must be >= 1, got " +
                                std::to_string(spec.dim));
  }
  if (std::isnan(spec.p) || spec.p < 1.0) {
    throw_error(ErrorCode::kInvalidArgument, "norm order p must be >= 1");
  }
}

double norm(const NormSpec& spec, const double* x) {
  const int n = spec.dim;
  if (std::isinf(spec.p)) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
  }
  if (spec.p == 1.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
  }
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  if (spec.p == 2.0) {
    for (int i = 0; i < n; ++i) {
      double t = x[i] / m;
      s += t * t;
    }
    return m * std::sqrt(s);
  }
  for (int i = 0; i < n; ++i) {
    s += std::pow(std::fabs(x[i]) / m, spec.p);
  }
  return m * std::pow(s, 1.0 / spec.p);
}

double norm(const NormSpec& spec, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.dim) {
    throw_error(ErrorCode::kDimensionMismatch,
                "vector length does not match norm dimension");
  }
  return norm(spec, x.data());
}

double log_unit_ball_volume(const NormSpec& spec) {
  validate(spec);
  const double n = spec.dim;
  if (std::isinf(spec.p)) return n * std::log(2.0);
  return n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / spec.p)) -
         std::lgamma(1.0 + n / spec.p);
}

double unit_ball_volume(const NormSpec& spec) {
  return std::exp(log_unit_ball_volume(spec));
}

double ball_volume(const NormSpec& spec, double r) {
  if (!(r >= 0.0)) throw_error(ErrorCode::kInvalidArgument, "ball radius must be >= 0");
  if (r == 0.0) return 0.0;
  return unit_ball_volume(spec) * std::pow(r, static_cast<double>(spec.dim));
}

void sample_direction(const NormSpec& spec, Rng& rng, double* out) {
  validate(spec);
  const int n = spec.dim;
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (std::isinf(spec.p)) {
      for (int i = 0; i < n; ++i) out[i] = rng.uniform(-1.0, 1.0);
    } else if (spec.p == 1.0) {
      for (int i = 0; i < n; ++i) out[i] = rng.sign() * rng.exponential();
    } else if (spec.p == 2.0) {
      for (int i = 0; i < n; ++i) out[i] = rng.normal();
    } else {
      const double inv_p = 1.0 / spec.p;
      for (int i = 0; i < n; ++i) {
        out[i] = rng.sign() * std::pow(rng.gamma(inv_p), inv_p);
      }
    }
    double len = norm(spec, out);
    if (!(len > 0.0) || !std::isfinite(len)) continue;
    for (int i = 0; i < n; ++i) out[i] /= len;
    // One renormalization pass keeps ||out||_p within an ulp of 1.
    len = norm(spec, out);
    for (int i = 0; i < n; ++i) out[i] /= len;
    return;
  }
  throw_error(ErrorCode::kInternal, "direction sampling failed to produce a nonzero vector");
}

std::vector<double> sample_direction(const NormSpec& spec, Rng& rng) {
  std::vector<double> out(static_cast<std::size_t>(spec.dim));
  sample_direction(spec, rng, out.data());
  return out;
}

}  // namespace staircase
