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
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>
#include <doctest.h>

#include "core/cost.hpp"
#include "core/errors.hpp"
#include "core/mathfn.hpp"
#include "core/norms.hpp"
#include "core/rng.hpp"
#include "core/staircase.hpp"
#include "oracles.hpp"

using staircase::BandTable;
using staircase::CostSpec;
using staircase::NormSpec;
using staircase::StaircaseParams;

namespace {

StaircaseParams make_params(double eps, double delta, int dim, double p,
                            double gamma) {
  StaircaseParams params;
  params.eps = eps;
  params.delta = delta;
  params.norm = NormSpec{dim, p};
  params.gamma = gamma;
  return params;
}

// Mean cost recomputed from the table's own weights and the closed-form
// shell averages in oracles.hpp.  Shares nothing with the series code path
// beyond the band layout itself.
double table_mean_from_oracle(const BandTable& table, const CostSpec& cost) {
  const StaircaseParams& p = table.params();
  staircase::KahanSum acc;
  for (const auto& band : table.bands()) {
    if (band.weight <= 0.0) continue;
    double a = (band.i == 1) ? band.k : band.k + p.gamma;
    double b = (band.i == 1) ? band.k + p.gamma : band.k + 1.0;
    double mean = 0.0;
    switch (cost.kind) {
      case CostSpec::Kind::kPower:
        mean = oracles::band_power_mean(a, b, p.norm.dim, cost.q, p.delta);
        break;
      case CostSpec::Kind::kThreshold:
        mean = oracles::band_threshold_mean(a, b, p.norm.dim, cost.lambda,
                                            p.delta);
        break;
      case CostSpec::Kind::kTruncated:
        mean = oracles::band_truncated_mean(a, b, p.norm.dim, cost.cap,
                                            p.delta);
        break;
    }
    acc.add(band.weight * mean);
  }
  return acc.value();
}

}  // namespace

TEST_CASE("pointwise loss values and kink lists") {
  CHECK(staircase::cost_value(CostSpec::power(2.0), 3.0) == 9.0);
  CHECK(staircase::cost_value(CostSpec::power(1.0), 0.0) == 0.0);
  CHECK(staircase::cost_value(CostSpec::threshold(1.5), 1.5) == 1.0);
  CHECK(staircase::cost_value(CostSpec::threshold(1.5), 1.4999) == 0.0);
  CHECK(staircase::cost_value(CostSpec::threshold(0.0), 0.0) == 1.0);
  CHECK(staircase::cost_value(CostSpec::truncated(2.0), 1.25) == 1.25);
  CHECK(staircase::cost_value(CostSpec::truncated(2.0), 7.0) == 2.0);

  CHECK(staircase::cost_kink_radii(CostSpec::power(2.0)).empty());
  auto thr = staircase::cost_kink_radii(CostSpec::threshold(1.5));
  REQUIRE(thr.size() == 1);
  CHECK(thr[0] == 1.5);
  auto tru = staircase::cost_kink_radii(CostSpec::truncated(0.75));
  REQUIRE(tru.size() == 1);
  CHECK(tru[0] == 0.75);
}

TEST_CASE("loss validation rejects bad parameters") {
  CHECK_THROWS_AS(staircase::validate(CostSpec::power(0.0)),
                  staircase::Error);
  CHECK_THROWS_AS(staircase::validate(CostSpec::power(-1.0)),
                  staircase::Error);
  CHECK_THROWS_AS(staircase::validate(CostSpec::threshold(-0.5)),
                  staircase::Error);
  CHECK_THROWS_AS(staircase::validate(CostSpec::truncated(-1.0)),
                  staircase::Error);
  CHECK_NOTHROW(staircase::validate(CostSpec::threshold(0.0)));
  CHECK_NOTHROW(staircase::validate(CostSpec::truncated(0.0)));
}

TEST_CASE("shell moment matches hand values and the closed form") {
  // Uniform on [0, 1) in one dimension: mean 1/2.
  CHECK(staircase::band_conditional_moment(0.0, 1.0, 1, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Radius of a uniform draw from the unit disc: mean 2/3.
  CHECK(staircase::band_conditional_moment(0.0, 1.0, 2, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Second moment over the shell [1, 2) of a three-dimensional ball:
  // (3/5)(2^5 - 1)/(2^3 - 1) = 93/35.
  CHECK(staircase::band_conditional_moment(1.0, 2.0, 3, 2.0) ==
        doctest::Approx(93.0 / 35.0).epsilon(1e-12));

  staircase::Rng rng(20260819u);
  for (int trial = 0; trial < 200; ++trial) {
    double a = 4.0 * rng.uniform01();
    double b = a + 0.05 + 2.0 * rng.uniform01();
    int dim = 1 + static_cast<int>(rng.uniform01() * 6.0);
    double q = 0.5 + 3.0 * rng.uniform01();
    CHECK(staircase::band_conditional_moment(a, b, dim, q) ==
          doctest::Approx(oracles::band_power_mean(a, b, dim, q, 1.0))
              .epsilon(1e-10));
  }

  CHECK_THROWS_AS(staircase::band_conditional_moment(0.0, 1.0, 0, 1.0),
                  staircase::Error);
  CHECK_THROWS_AS(staircase::band_conditional_moment(1.0, 1.0, 2, 1.0),
                  staircase::Error);
  CHECK_THROWS_AS(staircase::band_conditional_moment(0.0, 1.0, 2, 0.0),
                  staircase::Error);
}

TEST_CASE("mean threshold loss at lambda zero is one") {
  for (int dim : {1, 3, 7}) {
    auto table =
        staircase::build_band_table(make_params(1.0, 1.0, dim, 2.0, 0.5));
    double mean =
        staircase::expected_cost_series(table, CostSpec::threshold(0.0));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("series mean agrees with closed-form shell averages per band") {
  struct Case {
    double eps, delta, gamma, p;
    int dim;
  };
  const Case cases[] = {
      {1.0, 1.0, 0.5, 1.0, 1},  {2.0, 0.5, 0.25, 2.0, 3},
      {0.7, 2.0, 0.8, 1.5, 2},  {4.0, 1.0, 0.1, 1.0, 5},
      {1.3, 1.0, 1.0, 3.0, 2},  {1.3, 1.0, 0.0, 3.0, 2},
  };
  for (const Case& c : cases) {
    auto table = staircase::build_band_table(
        make_params(c.eps, c.delta, c.dim, c.p, c.gamma));
    for (double q : {1.0, 2.0, 0.5}) {
      double series =
          staircase::expected_cost_series(table, CostSpec::power(q));
      double oracle = table_mean_from_oracle(table, CostSpec::power(q));
      CHECK(series == doctest::Approx(oracle).epsilon(1e-9));
    }
    for (double lambda : {0.3, 1.7, 2.5}) {
      CostSpec cost = CostSpec::threshold(lambda * c.delta);
      double series = staircase::expected_cost_series(table, cost);
      double oracle = table_mean_from_oracle(table, cost);
      CHECK(series == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
    }
    for (double cap : {0.4, 1.9}) {
      CostSpec cost = CostSpec::truncated(cap * c.delta);
      double series = staircase::expected_cost_series(table, cost);
      double oracle = table_mean_from_oracle(table, cost);
      CHECK(series == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("threshold mean far beyond the tail underflows to exact zero") {
  auto table = staircase::build_band_table(make_params(1.0, 1.0, 2, 2.0, 0.5));
  double mean =
      staircase::expected_cost_series(table, CostSpec::threshold(800.0));
  CHECK(mean == 0.0);
}

TEST_CASE("truncated mean is dominated by both the cap and the raw mean") {
  for (double cap : {0.1, 0.8, 3.0}) {
    auto table =
        staircase::build_band_table(make_params(1.2, 1.0, 3, 1.0, 0.4));
    double truncated =
        staircase::expected_cost_series(table, CostSpec::truncated(cap));
    double raw = staircase::expected_cost_series(table, CostSpec::power(1.0));
    CHECK(truncated <= cap + 1e-15);
    CHECK(truncated <= raw + 1e-12);
    CHECK(truncated >= 0.0);
  }
}

TEST_CASE("mean loss decreases as the privacy budget grows") {
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1.0, 2.0, 4.0, 8.0, 15.0}) {
    auto table =
        staircase::build_band_table(make_params(eps, 1.0, 2, 2.0, 0.5));
    double mean = staircase::expected_cost_series(table, CostSpec::power(1.0));
    CHECK(mean < prev);
    prev = mean;
  }
}

TEST_CASE("mean power loss scales with the sensitivity step") {
  for (double q : {1.0, 2.0}) {
    auto one = staircase::build_band_table(make_params(1.5, 1.0, 3, 1.0, 0.3));
    auto two = staircase::build_band_table(make_params(1.5, 2.0, 3, 1.0, 0.3));
    double at_one = staircase::expected_cost_series(one, CostSpec::power(q));
    double at_two = staircase::expected_cost_series(two, CostSpec::power(q));
    CHECK(at_two / at_one == doctest::Approx(std::pow(2.0, q)).epsilon(1e-9));
  }
}

TEST_CASE("mean loss varies continuously in the split fraction") {
  // No jumps across a fine grid: adjacent values on a 1e-3 grid move by
  // far less than the total variation over [0, 1].
  auto cost = CostSpec::power(1.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double max_step = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double gamma = static_cast<double>(i) * 1e-3;
    auto table =
        staircase::build_band_table(make_params(1.0, 1.0, 1, 1.0, gamma));
    double mean = staircase::expected_cost_series(table, cost);
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
    if (i > 0) max_step = std::max(max_step, std::abs(mean - prev));
    prev = mean;
  }
  CHECK(hi > lo);
  CHECK(max_step <= 0.02 * (hi - lo));
}

TEST_CASE("series rejects losses that outgrow the period decay") {
  auto table =
      staircase::build_band_table(make_params(0.05, 1.0, 1, 1.0, 0.5));
  CHECK_THROWS_AS(
      staircase::expected_cost_series(table, CostSpec::power(200.0)),
      staircase::Error);
  try {
    staircase::expected_cost_series(table, CostSpec::power(200.0));
  } catch (const staircase::Error& e) {
    CHECK(e.code() == staircase::ErrorCode::kDivergentSeries);
  }
}

TEST_CASE("series tolerance must be positive and finite") {
  auto table = staircase::build_band_table(make_params(1.0, 1.0, 1, 1.0, 0.5));
  CHECK_THROWS_AS(
      staircase::expected_cost_series(table, CostSpec::power(1.0), 0.0),
      staircase::Error);
  CHECK_THROWS_AS(
      staircase::expected_cost_series(table, CostSpec::power(1.0), -1e-6),
      staircase::Error);
}

TEST_CASE("Monte Carlo threshold at lambda zero has zero spread") {
  auto table = staircase::build_band_table(make_params(1.0, 1.0, 2, 2.0, 0.5));
  auto est = staircase::expected_cost_mc(table, CostSpec::threshold(0.0),
                                         99u, 4096);
  CHECK(est.mean == 1.0);
  CHECK(est.stderr_ == 0.0);
  CHECK(est.count == 4096);
}

TEST_CASE("two-draw Monte Carlo reproduces the textbook standard error") {
  auto params = make_params(1.0, 1.0, 3, 2.0, 0.5);
  auto table = staircase::build_band_table(params);
  auto cost = CostSpec::power(1.0);
  const std::uint64_t seed = 31337u;

  // Replay the two draws through the public shard layout.
  double c[2];
  for (int shard = 0; shard < 2; ++shard) {
    REQUIRE(staircase::shard_draw_count(2, shard) == 1);
    staircase::Rng rng(staircase::shard_stream_seed(seed, shard));
    std::vector<double> x(3);
    staircase::draw_sample(table, rng, x.data());
    c[shard] = staircase::cost_value(cost, staircase::norm(params.norm,
                                                           x.data()));
  }
  for (int shard = 2; shard < staircase::kSampleShards; ++shard) {
    CHECK(staircase::shard_draw_count(2, shard) == 0);
  }

  auto est = staircase::expected_cost_mc(table, cost, seed, 2);
  CHECK(est.count == 2);
  CHECK(est.mean == doctest::Approx(0.5 * (c[0] + c[1])).epsilon(1e-15));
  CHECK(est.stderr_ ==
        doctest::Approx(0.5 * std::abs(c[0] - c[1])).epsilon(1e-12));
}

TEST_CASE("Monte Carlo mean is deterministic in the seed") {
  auto table = staircase::build_band_table(make_params(1.0, 1.0, 2, 1.0, 0.3));
  auto cost = CostSpec::power(2.0);
  auto a = staircase::expected_cost_mc(table, cost, 7u, 5000);
  auto b = staircase::expected_cost_mc(table, cost, 7u, 5000);
  auto other = staircase::expected_cost_mc(table, cost, 8u, 5000);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.mean != other.mean);
}

TEST_CASE("Monte Carlo agrees with the series within three standard errors") {
  struct Case {
    double eps, gamma, p;
    int dim;
    CostSpec cost;
  };
  const Case cases[] = {
      {1.0, 0.5, 1.0, 1, CostSpec::power(1.0)},
      {2.0, 0.3, 2.0, 3, CostSpec::power(2.0)},
      {1.0, 0.5, 2.0, 2, CostSpec::threshold(1.2)},
      {0.7, 0.8, 1.0, 3, CostSpec::truncated(0.8)},
  };
  std::uint64_t seed = 1234u;
  for (const Case& c : cases) {
    auto table =
        staircase::build_band_table(make_params(c.eps, 1.0, c.dim, c.p,
                                                c.gamma));
    double series = staircase::expected_cost_series(table, c.cost);
    auto est = staircase::expected_cost_mc(table, c.cost, seed++, 200000);
    CHECK(est.stderr_ > 0.0);
    CHECK(std::abs(est.mean - series) <= 3.0 * est.stderr_);
  }
}

TEST_CASE("stored draws replay the Monte Carlo estimate bit for bit") {
  auto params = make_params(1.3, 0.9, 3, 2.0, 0.4);
  auto table = staircase::build_band_table(params);
  auto cost = CostSpec::power(1.0);
  const std::uint64_t seed = 4242u;
  const std::int64_t count = 1003;  // uneven shard loads on purpose

  auto direct = staircase::expected_cost_mc(table, cost, seed, count);
  auto draws = staircase::sample_sharded(table, seed, count);
  auto replay = staircase::cost_from_samples(params.norm, cost, draws);

  CHECK(replay.count == direct.count);
  CHECK(replay.mean == direct.mean);
  CHECK(replay.stderr_ == direct.stderr_);
}

TEST_CASE("stored-draw estimates reject ragged input") {
  NormSpec norm{3, 2.0};
  std::vector<double> draws(7, 0.5);  // not a multiple of dim
  CHECK_THROWS_AS(
      staircase::cost_from_samples(norm, CostSpec::power(1.0), draws),
      staircase::Error);
  std::vector<double> one_point(3, 0.5);
  CHECK_THROWS_AS(
      staircase::cost_from_samples(norm, CostSpec::power(1.0), one_point),
      staircase::Error);
}
