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

#ifndef STAIRCASE_CORE_MATHFN_HPP
#define STAIRCASE_CORE_MATHFN_HPP

#include <cstdint>

namespace staircase {

// Compensated (Kahan) accumulator. Keeps long positive sums accurate to a
// few ulps independent of term count.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// b^s - a^s for 0 <= a <= b and s > 0, computed without cancellation.
double pow_diff(double a, double b, double s);

// Radius t in [a, b] with t^n = a^n + u (b^n - a^n), for 0 <= a < b and
// quantile u in [0, 1]: the inverse CDF of a radius drawn uniformly (in
// volume) from the shell [a, b) in dimension n. Stable form
// b (u + (1-u)(a/b)^n)^{1/n}.
double shell_quantile(double a, double b, double n, double u);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ceil(q) with near-integer inputs snapped to the integer first, so that
// values within relative tolerance 1e-9 of an integer are decided as exact
// rather than left to rounding noise.
double ceil_snapped(double q);

// Least attained value of ceil(t) over t in the open interval (q, inf),
// q >= 0: equals q+1 when q is (snapped) integer, ceil(q) otherwise.
double ceil_above_snapped(double q);

}  // namespace staircase

#endif  // STAIRCASE_CORE_MATHFN_HPP
