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

#include <cmath>
#include <initializer_list>
#include <doctest.h>

#include "core/mathfn.hpp"

using staircase::KahanSum;

TEST_CASE("compensated summation keeps tiny terms a naive sum drops") {
  KahanSum k;
  double naive = 0.0;
  k.add(1.0);
  naive += 1.0;
  for (int i = 0; i < 4096; ++i) {
    k.add(0x1.0p-53);
    naive += 0x1.0p-53;
  }
  // 1 + 4096 * 2^-53 = 1 + 2^-41 is exactly representable.
  CHECK(k.value() == 1.0 + 0x1.0p-41);
  CHECK(naive == 1.0);  // the control: naive addition loses every term
}

TEST_CASE("pow_diff matches direct powers when no cancellation occurs") {
  CHECK(staircase::pow_diff(1.0, 2.0, 3.0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(staircase::pow_diff(0.0, 2.5, 2.0) == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(staircase::pow_diff(3.0, 3.0, 5.0) == 0.0);
}

TEST_CASE("pow_diff survives near-equal endpoints") {
  // (1+x)^3 - 1 = 3x + 3x^2 + x^3; direct evaluation loses ~4 digits here.
  double x = 1e-12;
  double exact = 3.0 * x + 3.0 * x * x + x * x * x;
  double got = staircase::pow_diff(1.0, 1.0 + x, 3.0);
  CHECK(got == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("shell_quantile hits endpoints and the closed-form midpoint") {
  CHECK(staircase::shell_quantile(1.0, 2.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(staircase::shell_quantile(1.0, 2.0, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  // Median radius of the volume-uniform law on the shell [1,2] in dim 2:
  // t^2 = 1 + 0.5*(4-1) so t = sqrt(2.5).
  CHECK(staircase::shell_quantile(1.0, 2.0, 2.0, 0.5) ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
}

TEST_CASE("shell_quantile inverts the shell CDF across dimensions") {
  for (double n : {1.0, 2.0, 3.0, 7.0}) {
    for (double u : {0.1, 0.25, 0.5, 0.9, 0.99}) {
      double t = staircase::shell_quantile(0.5, 3.0, n, u);
      double cdf = (std::pow(t, n) - std::pow(0.5, n)) /
                   (std::pow(3.0, n) - std::pow(0.5, n));
      CHECK(cdf == doctest::Approx(u).epsilon(1e-12));
      CHECK(t >= 0.5);
      CHECK(t <= 3.0);
    }
  }
}

TEST_CASE("shell_quantile is strictly increasing in the quantile") {
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    double t = staircase::shell_quantile(1.0, 2.0, 3.0, i / 100.0);
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("regularized incomplete gamma matches closed forms") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 40.0}) {
    // Shape 1 is the exponential CDF.
    CHECK(staircase::gamma_p(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // Shape 3 is the Erlang-3 CDF.
    double erlang = 1.0 - std::exp(-x) * (1.0 + x + 0.5 * x * x);
    CHECK(staircase::gamma_p(3.0, x) == doctest::Approx(erlang).epsilon(1e-12));
    // Shape 1/2 reduces to the error function.
    CHECK(staircase::gamma_p(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
}

TEST_CASE("gamma_p and gamma_q are complements and respect the limits") {
  for (double a : {0.3, 1.0, 2.5, 8.0}) {
    CHECK(staircase::gamma_p(a, 0.0) == 0.0);
    CHECK(staircase::gamma_q(a, 0.0) == 1.0);
    for (double x : {0.2, 1.0, 5.0, 25.0}) {
      CHECK(staircase::gamma_p(a, x) + staircase::gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(staircase::gamma_p(a, 700.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ceil_snapped forgives near-integer noise in both directions") {
  CHECK(staircase::ceil_snapped(2.0) == 2.0);
  CHECK(staircase::ceil_snapped(2.1) == 3.0);
  CHECK(staircase::ceil_snapped(2.0 + 4e-10) == 2.0);
  CHECK(staircase::ceil_snapped(2.0 - 4e-10) == 2.0);
  CHECK(staircase::ceil_snapped(0.0) == 0.0);
  CHECK(staircase::ceil_snapped(0.3) == 1.0);
}

TEST_CASE("ceil_above_snapped is the infimum of ceil over the open right ray") {
  CHECK(staircase::ceil_above_snapped(2.0) == 3.0);  // ceil just above 2 is 3
  CHECK(staircase::ceil_above_snapped(2.0 + 4e-10) == 3.0);
  CHECK(staircase::ceil_above_snapped(2.3) == 3.0);
  CHECK(staircase::ceil_above_snapped(0.0) == 1.0);
}
