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

#include "staircase_dp.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/cost.hpp"
#include "core/dpverify.hpp"
#include "core/errors.hpp"
#include "core/optimize.hpp"
#include "core/profile.hpp"
#include "core/rearrange.hpp"
#include "core/rng.hpp"
#include "core/staircase.hpp"

struct sdp_mechanism {
  staircase::BandTable table;
};

struct sdp_profile {
  staircase::RadialProfile profile;
};

namespace {

thread_local std::string g_last_error = "ok";

void set_last_error(const char* msg) { g_last_error = msg ? msg : "error"; }

sdp_status map_code(staircase::ErrorCode code) {
  using staircase::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return SDP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch:
      return SDP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kDegenerateBand:
      return SDP_ERR_DEGENERATE_BAND;
    case ErrorCode::kDivergentSeries:
      return SDP_ERR_DIVERGENT_SERIES;
    case ErrorCode::kDecompositionFailure:
      return SDP_ERR_DECOMPOSITION_FAILURE;
    case ErrorCode::kPreconditionFailed:
      return SDP_ERR_PRECONDITION_FAILED;
    case ErrorCode::kInternal:
      return SDP_ERR_INTERNAL;
  }
  return SDP_ERR_INTERNAL;
}

template <typename Fn>
sdp_status run_guarded(Fn&& fn) noexcept {
  try {
    fn();
    return SDP_OK;
  } catch (const staircase::Error& e) {
    set_last_error(e.what());
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    set_last_error("out of memory");
    return SDP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_last_error(e.what());
    return SDP_ERR_INTERNAL;
  } catch (...) {
    set_last_error("unknown error");
    return SDP_ERR_INTERNAL;
  }
}

sdp_status null_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return SDP_ERR_INVALID_ARGUMENT;
}

staircase::CostSpec to_cost_spec(const sdp_cost_spec* cost) {
  staircase::CostSpec out;
  switch (cost->kind) {
    case SDP_COST_POWER:
      out.kind = staircase::CostSpec::Kind::kPower;
      break;
    case SDP_COST_THRESHOLD:
      out.kind = staircase::CostSpec::Kind::kThreshold;
      break;
    case SDP_COST_TRUNCATED:
      out.kind = staircase::CostSpec::Kind::kTruncated;
      break;
    default:
      staircase::throw_error(staircase::ErrorCode::kInvalidArgument,
                             "unknown cost kind");
  }
  out.q = cost->q;
  out.lambda = cost->lambda;
  out.cap = cost->cap;
  staircase::validate(out);
  return out;
}

}  // namespace

extern "C" {

const char* sdp_last_error(void) { return g_last_error.c_str(); }

const char* sdp_status_name(sdp_status status) {
  switch (status) {
    case SDP_OK:
      return "ok";
    case SDP_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case SDP_ERR_DIMENSION_MISMATCH:
      return "dimension_mismatch";
    case SDP_ERR_DEGENERATE_BAND:
      return "degenerate_band";
    case SDP_ERR_DIVERGENT_SERIES:
      return "divergent_series";
    case SDP_ERR_DECOMPOSITION_FAILURE:
      return "decomposition_failure";
    case SDP_ERR_PRECONDITION_FAILED:
      return "precondition_failed";
    case SDP_ERR_INTERNAL:
      return "internal";
  }
  return "internal";
}

sdp_status sdp_mechanism_create(double eps, double delta, int dim, double p,
                                double gamma, double tail_tol,
                                sdp_mechanism** out) {
  if (!out) return null_arg("out");
  return run_guarded([&] {
    staircase::StaircaseParams params;
    params.eps = eps;
    params.delta = delta;
    params.norm = staircase::NormSpec{dim, p};
    params.gamma = gamma;
    staircase::BandTable table = staircase::build_band_table(
        params, tail_tol > 0.0 ? tail_tol : 1e-12);
    *out = new sdp_mechanism{std::move(table)};
  });
}

void sdp_mechanism_destroy(sdp_mechanism* m) { delete m; }

sdp_status sdp_mechanism_info(const sdp_mechanism* m, double* eps,
                              double* delta, int* dim, double* p,
                              double* gamma, int* k_max, double* tail_mass) {
  if (!m) return null_arg("mechanism");
  const staircase::StaircaseParams& params = m->table.params();
  if (eps) *eps = params.eps;
  if (delta) *delta = params.delta;
  if (dim) *dim = params.norm.dim;
  if (p) *p = params.norm.p;
  if (gamma) *gamma = params.gamma;
  if (k_max) *k_max = m->table.k_max();
  if (tail_mass) *tail_mass = m->table.tail_mass();
  return SDP_OK;
}

int sdp_mechanism_band_count(const sdp_mechanism* m) {
  return m ? static_cast<int>(m->table.bands().size()) : 0;
}

sdp_status sdp_mechanism_band(const sdp_mechanism* m, int index, int* k,
                              int* step, double* weight) {
  if (!m) return null_arg("mechanism");
  if (index < 0 || index >= static_cast<int>(m->table.bands().size())) {
    set_last_error("band index out of range");
    return SDP_ERR_INVALID_ARGUMENT;
  }
  const staircase::Band& band = m->table.bands()[index];
  if (k) *k = band.k;
  if (step) *step = band.i;
  if (weight) *weight = band.weight;
  return SDP_OK;
}

sdp_status sdp_mechanism_density(const sdp_mechanism* m, const double* x,
                                 double* out) {
  if (!m) return null_arg("mechanism");
  if (!x) return null_arg("x");
  if (!out) return null_arg("out");
  return run_guarded([&] { *out = staircase::density(m->table, x); });
}

sdp_status sdp_mechanism_density_radial(const sdp_mechanism* m, double r,
                                        double* out) {
  if (!m) return null_arg("mechanism");
  if (!out) return null_arg("out");
  return run_guarded([&] { *out = staircase::density_radial(m->table, r); });
}

sdp_status sdp_mechanism_radial_cdf(const sdp_mechanism* m, double r,
                                    double* out) {
  if (!m) return null_arg("mechanism");
  if (!out) return null_arg("out");
  return run_guarded([&] { *out = staircase::radial_cdf(m->table, r); });
}

sdp_status sdp_mechanism_sample(const sdp_mechanism* m, uint64_t seed,
                                int64_t count, double* out) {
  if (!m) return null_arg("mechanism");
  if (!out && count > 0) return null_arg("out");
  return run_guarded(
      [&] { staircase::sample_sharded(m->table, seed, count, out); });
}

sdp_status sdp_mechanism_cost_series(const sdp_mechanism* m,
                                     const sdp_cost_spec* cost, double tol,
                                     double* out) {
  if (!m) return null_arg("mechanism");
  if (!cost) return null_arg("cost");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out = staircase::expected_cost_series(m->table, to_cost_spec(cost),
                                           tol > 0.0 ? tol : 1e-12);
  });
}

sdp_status sdp_mechanism_cost_mc(const sdp_mechanism* m,
                                 const sdp_cost_spec* cost, uint64_t seed,
                                 int64_t count, double* mean,
                                 double* stderr_out) {
  if (!m) return null_arg("mechanism");
  if (!cost) return null_arg("cost");
  if (!mean) return null_arg("mean");
  return run_guarded([&] {
    staircase::McEstimate est =
        staircase::expected_cost_mc(m->table, to_cost_spec(cost), seed, count);
    *mean = est.mean;
    if (stderr_out) *stderr_out = est.stderr_;
  });
}

sdp_status sdp_cost_from_samples(int dim, double p,
                                 const sdp_cost_spec* cost,
                                 const double* samples, int64_t count,
                                 double* mean, double* stderr_out) {
  if (!cost) return null_arg("cost");
  if (!samples && count > 0) return null_arg("samples");
  if (!mean) return null_arg("mean");
  return run_guarded([&] {
    staircase::McEstimate est = staircase::cost_from_samples(
        staircase::NormSpec{dim, p}, to_cost_spec(cost), samples, count);
    *mean = est.mean;
    if (stderr_out) *stderr_out = est.stderr_;
  });
}

sdp_status sdp_find_gamma_star(double eps, double delta, int dim, double p,
                               const sdp_cost_spec* cost, int grid_points,
                               int refine_iters, double* gamma_star,
                               double* cost_out) {
  if (!cost) return null_arg("cost");
  if (!gamma_star) return null_arg("gamma_star");
  return run_guarded([&] {
    staircase::GammaStar best = staircase::find_gamma_star(
        eps, delta, staircase::NormSpec{dim, p}, to_cost_spec(cost),
        grid_points > 0 ? grid_points : 101,
        refine_iters > 0 ? refine_iters : 48);
    *gamma_star = best.gamma;
    if (cost_out) *cost_out = best.cost;
  });
}

sdp_status sdp_laplace_baseline_cost(double eps, double delta, int dim,
                                     double p, int product_flavor,
                                     const sdp_cost_spec* cost, double* out) {
  if (!cost) return null_arg("cost");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out = staircase::laplace_baseline_cost(
        eps, delta, staircase::NormSpec{dim, p},
        product_flavor ? staircase::LaplaceFlavor::kProductL1
                       : staircase::LaplaceFlavor::kRadial,
        to_cost_spec(cost));
  });
}

sdp_status sdp_tradeoff_sweep(const double* eps_list, int n_eps,
                              const int* dim_list, int n_dim, double p,
                              const sdp_cost_spec* cost, int mc_check,
                              uint64_t seed, int64_t mc_samples,
                              double* rows_out) {
  if (!eps_list || n_eps < 1) return null_arg("eps_list");
  if (!dim_list || n_dim < 1) return null_arg("dim_list");
  if (!cost) return null_arg("cost");
  if (!rows_out) return null_arg("rows_out");
  return run_guarded([&] {
    std::vector<double> eps_vec(eps_list, eps_list + n_eps);
    std::vector<int> dim_vec(dim_list, dim_list + n_dim);
    staircase::NormSpec norm{dim_vec[0], p};
    std::vector<staircase::TradeoffRow> rows = staircase::tradeoff_sweep(
        eps_vec, dim_vec, norm, to_cost_spec(cost), mc_check != 0, seed,
        mc_samples > 0 ? mc_samples : 200000);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double* r = rows_out + i * SDP_SWEEP_COLS;
      r[0] = rows[i].eps;
      r[1] = static_cast<double>(rows[i].dim);
      r[2] = rows[i].p;
      r[3] = rows[i].gamma_star;
      r[4] = rows[i].staircase_cost;
      r[5] = rows[i].laplace_cost;
      r[6] = rows[i].mc_checked ? 1.0 : 0.0;
      r[7] = rows[i].mc_mean;
      r[8] = rows[i].mc_stderr;
    }
  });
}

sdp_status sdp_mechanism_check_ratio_pairs(const sdp_mechanism* m,
                                           uint64_t seed, int64_t pairs,
                                           double* max_ratio,
                                           double* witness_x,
                                           double* witness_y, int* passed,
                                           int64_t* pairs_tested) {
  if (!m) return null_arg("mechanism");
  if (!max_ratio) return null_arg("max_ratio");
  return run_guarded([&] {
    const staircase::StaircaseParams& params = m->table.params();
    staircase::DpReport report = staircase::check_ratio_pairs(
        staircase::staircase_density_model(m->table), params.eps,
        params.delta, seed, pairs);
    *max_ratio = report.max_ratio;
    int dim = params.norm.dim;
    if (witness_x && static_cast<int>(report.witness_x.size()) == dim) {
      std::memcpy(witness_x, report.witness_x.data(), sizeof(double) * dim);
    }
    if (witness_y && static_cast<int>(report.witness_y.size()) == dim) {
      std::memcpy(witness_y, report.witness_y.data(), sizeof(double) * dim);
    }
    if (passed) *passed = report.passed ? 1 : 0;
    if (pairs_tested) *pairs_tested = report.pairs_tested;
  });
}

void sdp_profile_destroy(sdp_profile* profile) { delete profile; }

sdp_status sdp_profile_create(const double* breakpoints, const double* values,
                              int n_plateaus, int decay_tail, double tail_eps,
                              double tail_delta, sdp_profile** out) {
  if (!breakpoints) return null_arg("breakpoints");
  if (!values) return null_arg("values");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    staircase::require(n_plateaus >= 1, staircase::ErrorCode::kInvalidArgument,
                       "n_plateaus must be >= 1");
    std::vector<double> bp(breakpoints, breakpoints + n_plateaus + 1);
    std::vector<double> vals(values, values + n_plateaus);
    auto tail = decay_tail ? staircase::RadialProfile::Tail::kDecay
                           : staircase::RadialProfile::Tail::kZero;
    *out = new sdp_profile{staircase::RadialProfile(
        std::move(bp), std::move(vals), tail, tail_eps, tail_delta)};
  });
}

sdp_status sdp_demo_profile(double eps, double delta, uint64_t seed,
                            sdp_profile** out) {
  if (!out) return null_arg("out");
  return run_guarded([&] {
    staircase::require(std::isfinite(eps) && eps > 0.0,
                       staircase::ErrorCode::kInvalidArgument,
                       "eps must be positive and finite");
    staircase::require(std::isfinite(delta) && delta > 0.0,
                       staircase::ErrorCode::kInvalidArgument,
                       "delta must be positive and finite");
    // Bounded log-walk: any window of one period spans at most `cells`
    // steps of size <= 0.9 eps / cells, so every pair within distance
    // delta stays inside the e^{eps} ratio budget.
    constexpr int kCells = 8;
    staircase::Rng rng(staircase::mix_seed(seed, 0xDE30u));
    const double step_cap = 0.9 * eps / kCells;
    std::vector<double> breakpoints = {0.0};
    std::vector<double> values;
    double logv = 0.0;
    for (int c = 0; c < 2 * kCells; ++c) {
      if (c > 0) {
        double u = rng.uniform(-1.0, 1.0);
        if (c == kCells / 2) u = 1.0;  // force one climb: non-monotone
        logv += step_cap * u;
      }
      breakpoints.push_back(delta * (c + 1) / kCells);
      values.push_back(std::exp(logv));
    }
    // Third period: a single plateau, reached by one more bounded step,
    // then exact geometric decay.
    logv += step_cap * rng.uniform(-1.0, 1.0);
    breakpoints.push_back(3.0 * delta);
    values.push_back(std::exp(logv));
    staircase::RadialProfile raw(std::move(breakpoints), std::move(values),
                                 staircase::RadialProfile::Tail::kDecay, eps,
                                 delta);
    double mass = staircase::profile_mass(raw, staircase::NormSpec{1, 1.0});
    *out = new sdp_profile{raw.scaled(1.0 / mass)};
  });
}

sdp_status sdp_profile_rearrange(const sdp_profile* profile, int dim,
                                 sdp_profile** out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out = new sdp_profile{staircase::rearrange_profile(profile->profile, dim)};
  });
}

sdp_status sdp_profile_mass_match(const sdp_profile* profile, int dim,
                                  double eps, double delta, double* y_out,
                                  sdp_profile** out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    staircase::MassMatch match =
        staircase::find_mass_matching_y(profile->profile, dim, eps, delta);
    if (y_out) *y_out = match.y;
    *out = new sdp_profile{std::move(match.profile)};
  });
}

int sdp_profile_plateau_count(const sdp_profile* profile) {
  return profile ? static_cast<int>(profile->profile.plateau_count()) : 0;
}

sdp_status sdp_profile_plateau(const sdp_profile* profile, int index,
                               double* lo, double* hi, double* value) {
  if (!profile) return null_arg("profile");
  if (index < 0 ||
      index >= static_cast<int>(profile->profile.plateau_count())) {
    set_last_error("plateau index out of range");
    return SDP_ERR_INVALID_ARGUMENT;
  }
  if (lo) *lo = profile->profile.breakpoints()[index];
  if (hi) *hi = profile->profile.breakpoints()[index + 1];
  if (value) *value = profile->profile.values()[index];
  return SDP_OK;
}

int sdp_profile_has_decay_tail(const sdp_profile* profile) {
  return profile &&
                 profile->profile.tail() ==
                     staircase::RadialProfile::Tail::kDecay
             ? 1
             : 0;
}

sdp_status sdp_profile_eval(const sdp_profile* profile, double r,
                            double* out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] { *out = profile->profile(r); });
}

sdp_status sdp_profile_cdf(const sdp_profile* profile, int dim, double p,
                           double r, double* out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out = staircase::profile_radial_cdf(profile->profile,
                                         staircase::NormSpec{dim, p}, r);
  });
}

sdp_status sdp_profile_check_loglip(const sdp_profile* profile, double eps,
                                    double delta, int* out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out = staircase::check_radial_loglip(profile->profile, eps, delta) ? 1
                                                                        : 0;
  });
}

sdp_status sdp_profile_check_maximal_decay(const sdp_profile* profile,
                                           double eps, double delta,
                                           int* out) {
  if (!profile) return null_arg("profile");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    *out =
        staircase::check_maximal_decay(profile->profile, eps, delta) ? 1 : 0;
  });
}

sdp_status sdp_profile_check_domination(const sdp_profile* f,
                                        const sdp_profile* g, int dim,
                                        double p, int* out) {
  if (!f) return null_arg("f");
  if (!g) return null_arg("g");
  if (!out) return null_arg("out");
  return run_guarded([&] {
    staircase::NormSpec norm{dim, p};
    *out = staircase::check_domination(
               staircase::profile_cdf_evaluator(f->profile, norm),
               staircase::profile_cdf_evaluator(g->profile, norm))
               ? 1
               : 0;
  });
}

sdp_status sdp_profile_decompose(const sdp_profile* profile, int dim,
                                 double p, int gamma_grid, double* gammas,
                                 double* weights, int* count) {
  if (!profile) return null_arg("profile");
  if (!gammas) return null_arg("gammas");
  if (!weights) return null_arg("weights");
  if (!count) return null_arg("count");
  return run_guarded([&] {
    std::vector<staircase::MixtureComponent> parts =
        staircase::decompose_staircase_mixture(
            profile->profile, staircase::NormSpec{dim, p}, gamma_grid);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      gammas[i] = parts[i].gamma;
      weights[i] = parts[i].weight;
    }
    *count = static_cast<int>(parts.size());
  });
}

}  // extern "C"
