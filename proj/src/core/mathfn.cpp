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

#include "core/mathfn.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace staircase {

double pow_diff(double a, double b, double s) {
  if (!(a >= 0.0) || !(b >= a) || !(s > 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "pow_diff requires 0 <= a <= b and s > 0");
  }
  if (a == b) return 0.0;
  if (a == 0.0) return std::pow(b, s);
  // b^s (1 - (a/b)^s) = -b^s expm1(s log(a/b)); log(a/b) < 0 so no overflow
  // inside expm1 and no subtractive cancellation.
  return -std::pow(b, s) * std::expm1(s * std::log(a / b));
}

double shell_quantile(double a, double b, double n, double u) {
  if (!(a >= 0.0) || !(b > a) || !(n >= 1.0) || !(u >= 0.0 && u <= 1.0)) {
    throw_error(ErrorCode::kInvalidArgument,
                "shell_quantile requires 0 <= a < b, n >= 1, u in [0, 1]");
  }
  if (a == 0.0) return b * std::pow(u, 1.0 / n);
  double t = std::exp(n * std::log(a / b));
  return b * std::exp(std::log(u + (1.0 - u) * t) / n);
}

namespace {

// Series representation of P(a,x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), effective for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "gamma_p requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "gamma_q requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

namespace {

bool near_integer(double q, double* snapped) {
  double r = std::nearbyint(q);
  if (std::fabs(q - r) <= 1e-9 * std::fmax(1.0, std::fabs(q))) {
    *snapped = r;
    return true;
  }
  return false;
}

}  // namespace

double ceil_snapped(double q) {
  double r;
  if (near_integer(q, &r)) return r;
  return std::ceil(q);
}

double ceil_above_snapped(double q) {
  double r;
  if (near_integer(q, &r)) return r + 1.0;
  return std::ceil(q);
}

}  // namespace staircase
