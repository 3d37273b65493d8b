/* Copyright 2026 The staircase-dp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the staircase mechanism library: optimal additive noise
 * for eps-differentially-private vector queries under lp norms.
 *
 * Every function that can fail returns an sdp_status; SDP_OK is 0. On
 * failure the thread-local message from sdp_last_error() describes the
 * problem. Out-parameters are written only on SDP_OK. Handles are created
 * and destroyed by matching create/destroy calls and are safe to share
 * across threads for read-only use.
 */

#ifndef STAIRCASE_DP_H
#define STAIRCASE_DP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sdp_status {
  SDP_OK = 0,
  SDP_ERR_INVALID_ARGUMENT = 1,
  SDP_ERR_DIMENSION_MISMATCH = 2,
  SDP_ERR_DEGENERATE_BAND = 3,
  SDP_ERR_DIVERGENT_SERIES = 4,
  SDP_ERR_DECOMPOSITION_FAILURE = 5,
  SDP_ERR_PRECONDITION_FAILED = 6,
  SDP_ERR_INTERNAL = 7
} sdp_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* sdp_last_error(void);

/* Stable lowercase token for a status code, e.g. "invalid_argument". */
const char* sdp_status_name(sdp_status status);

/* ---- Cost specifications ---------------------------------------------- */

typedef enum sdp_cost_kind {
  SDP_COST_POWER = 0,     /* phi(r) = r^q,            q > 0      */
  SDP_COST_THRESHOLD = 1, /* phi(r) = 1{r >= lambda}, lambda >= 0 */
  SDP_COST_TRUNCATED = 2  /* phi(r) = min(r, cap),    cap >= 0   */
} sdp_cost_kind;

typedef struct sdp_cost_spec {
  sdp_cost_kind kind;
  double q;
  double lambda;
  double cap;
} sdp_cost_spec;

/* ---- Mechanism handles ------------------------------------------------- */

/* A staircase mechanism: the noise density with plateau-split gamma in
 * [0, 1] for an eps-DP query of sensitivity delta under the lp norm in
 * `dim` dimensions (p >= 1; pass INFINITY for the max norm). */
typedef struct sdp_mechanism sdp_mechanism;

sdp_status sdp_mechanism_create(double eps, double delta, int dim, double p,
                                double gamma, double tail_tol,
                                sdp_mechanism** out);
void sdp_mechanism_destroy(sdp_mechanism* m);

/* Reads back parameters and truncation facts; NULL outs are skipped. */
sdp_status sdp_mechanism_info(const sdp_mechanism* m, double* eps,
                              double* delta, int* dim, double* p,
                              double* gamma, int* k_max, double* tail_mass);

/* Retained radial bands: band b covers [k delta, (k+gamma) delta) when
 * step = 1 and [(k+gamma) delta, (k+1) delta) when step = 2; weight is its
 * post-truncation probability. */
int sdp_mechanism_band_count(const sdp_mechanism* m);
sdp_status sdp_mechanism_band(const sdp_mechanism* m, int index, int* k,
                              int* step, double* weight);

/* Density at a point x (length dim) / at a radius; radial CDF of ||X||. */
sdp_status sdp_mechanism_density(const sdp_mechanism* m, const double* x,
                                 double* out);
sdp_status sdp_mechanism_density_radial(const sdp_mechanism* m, double r,
                                        double* out);
sdp_status sdp_mechanism_radial_cdf(const sdp_mechanism* m, double r,
                                    double* out);

/* Draws `count` noise vectors into out (count * dim doubles). The result
 * depends only on (mechanism, seed, count): draws are split over a fixed
 * shard layout with per-shard substreams, so runs replay byte-identically
 * regardless of thread availability. */
sdp_status sdp_mechanism_sample(const sdp_mechanism* m, uint64_t seed,
                                int64_t count, double* out);

/* Exact mean cost via the band series (tol <= 0 selects the default
 * 1e-12), and the Monte Carlo estimate with its standard error. */
sdp_status sdp_mechanism_cost_series(const sdp_mechanism* m,
                                     const sdp_cost_spec* cost, double tol,
                                     double* out);
sdp_status sdp_mechanism_cost_mc(const sdp_mechanism* m,
                                 const sdp_cost_spec* cost, uint64_t seed,
                                 int64_t count, double* mean,
                                 double* stderr_out);

/* Mean cost over stored draws (count vectors of length dim, concatenated).
 * Pooled with the same shard layout as sdp_mechanism_cost_mc: feeding back
 * sdp_mechanism_sample output with the matching count reproduces the
 * Monte Carlo estimate bit for bit. */
sdp_status sdp_cost_from_samples(int dim, double p,
                                 const sdp_cost_spec* cost,
                                 const double* samples, int64_t count,
                                 double* mean, double* stderr_out);

/* ---- Optimization and baselines ---------------------------------------- */

/* Minimizes the exact mean cost over gamma in [0, 1] (grid search plus
 * local refinement; grid_points <= 0 and refine_iters <= 0 select the
 * defaults 101 and 48). */
sdp_status sdp_find_gamma_star(double eps, double delta, int dim, double p,
                               const sdp_cost_spec* cost, int grid_points,
                               int refine_iters, double* gamma_star,
                               double* cost_out);

/* Mean cost of the Laplace-style comparator. product_flavor != 0 prices n
 * independent Laplace coordinates (requires p = 1); otherwise the radial
 * law with the same e^{-eps r / delta} decay. */
sdp_status sdp_laplace_baseline_cost(double eps, double delta, int dim,
                                     double p, int product_flavor,
                                     const sdp_cost_spec* cost, double* out);

/* Tradeoff sweep over every (eps, dim) pair, sorted by (eps, dim). Writes
 * n_eps * n_dim rows of SDP_SWEEP_COLS doubles each into rows_out:
 * [eps, dim, p, gamma_star, staircase_cost, laplace_cost,
 *  mc_checked, mc_mean, mc_stderr]. With mc_check != 0 each row is
 * cross-validated by a Monte Carlo run of mc_samples draws (<= 0 selects
 * the default 200000). */
#define SDP_SWEEP_COLS 9
sdp_status sdp_tradeoff_sweep(const double* eps_list, int n_eps,
                              const int* dim_list, int n_dim, double p,
                              const sdp_cost_spec* cost, int mc_check,
                              uint64_t seed, int64_t mc_samples,
                              double* rows_out);

/* ---- Privacy verification ---------------------------------------------- */

/* Fuzzes the density-ratio bound f(x) <= e^eps f(y) over `pairs` random
 * pairs at distance <= delta plus deterministic boundary-straddling pairs.
 * witness_x / witness_y (length dim each, may be NULL) receive the pair
 * attaining max_ratio; *passed is 1 iff max_ratio <= e^eps (1 + 1e-12).
 * Deterministic given (mechanism, seed, pairs). */
sdp_status sdp_mechanism_check_ratio_pairs(const sdp_mechanism* m,
                                           uint64_t seed, int64_t pairs,
                                           double* max_ratio,
                                           double* witness_x,
                                           double* witness_y, int* passed,
                                           int64_t* pairs_tested);

/* ---- Radial profiles and the rearrangement pipeline -------------------- */

/* A radial step profile: plateau values over [0, inf), either vanishing
 * past its last breakpoint or continuing by exact geometric decay. */
typedef struct sdp_profile sdp_profile;

void sdp_profile_destroy(sdp_profile* profile);

/* Wraps a caller-supplied step profile: n_plateaus values over the cells of
 * n_plateaus + 1 strictly ascending breakpoints starting at 0. With
 * decay_tail != 0 the profile continues past its last breakpoint, scaling
 * by e^{-tail_eps} every tail_delta; otherwise it vanishes there (pass 0
 * for both tail parameters in that case). */
sdp_status sdp_profile_create(const double* breakpoints, const double* values,
                              int n_plateaus, int decay_tail, double tail_eps,
                              double tail_delta, sdp_profile** out);

/* A seeded non-monotone one-dimensional step density that satisfies the
 * eps-DP ratio bound: a bounded log-walk over two periods, a single
 * plateau on the third, then exact geometric decay; normalized to unit
 * mass. Deterministic given (eps, delta, seed). */
sdp_status sdp_demo_profile(double eps, double delta, uint64_t seed,
                            sdp_profile** out);

/* Decreasing rearrangement in `dim` dimensions (level sets keep their
 * volume and become centered balls). */
sdp_status sdp_profile_rearrange(const sdp_profile* profile, int dim,
                                 sdp_profile** out);

/* Pivot y >= 0 and extension profile whose mass matches the input's; the
 * extension decays maximally and its norm CDF dominates the input's. */
sdp_status sdp_profile_mass_match(const sdp_profile* profile, int dim,
                                  double eps, double delta, double* y_out,
                                  sdp_profile** out);

/* Plateau table access: plateau `index` is [lo, hi) at `value`. */
int sdp_profile_plateau_count(const sdp_profile* profile);
sdp_status sdp_profile_plateau(const sdp_profile* profile, int index,
                               double* lo, double* hi, double* value);
/* 1 when the profile continues past its last breakpoint by exact decay. */
int sdp_profile_has_decay_tail(const sdp_profile* profile);

sdp_status sdp_profile_eval(const sdp_profile* profile, double r,
                            double* out);

/* CDF of ||X|| when X has density profile(r)/mass under the lp norm. */
sdp_status sdp_profile_cdf(const sdp_profile* profile, int dim, double p,
                           double r, double* out);

/* Exact decision of |log rho(r) - log rho(s)| <= eps ceil(|r-s|/delta). */
sdp_status sdp_profile_check_loglip(const sdp_profile* profile, double eps,
                                    double delta, int* out);

/* Exact decision of maximal decay: nonincreasing and
 * rho(t + delta) = e^{-eps} rho(t) everywhere (whole-period domain). */
sdp_status sdp_profile_check_maximal_decay(const sdp_profile* profile,
                                           double eps, double delta,
                                           int* out);

/* *out = 1 iff the norm CDF under f dominates (is >= at every breakpoint)
 * the norm CDF under g, both in the same lp geometry. */
sdp_status sdp_profile_check_domination(const sdp_profile* f,
                                        const sdp_profile* g, int dim,
                                        double p, int* out);

/* Writes a maximally-decaying profile as a convex mixture of staircase
 * profiles with gamma on the grid {i / gamma_grid}. gammas and weights
 * must hold gamma_grid entries; *count receives how many were written. */
sdp_status sdp_profile_decompose(const sdp_profile* profile, int dim,
                                 double p, int gamma_grid, double* gammas,
                                 double* weights, int* count);

#ifdef __cplusplus
}
#endif

#endif /* STAIRCASE_DP_H */
