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

// Command-line front end for the staircase mechanism: sampling, cost
// evaluation, gamma optimization, tradeoff sweeps, privacy verification,
// and a rearrangement demo. All randomness is seed-derived, so identical
// invocations produce byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "staircase_dp.h"

namespace {

using nlohmann::ordered_json;

struct CliError {
  sdp_status status;
  std::string message;
};

void check(sdp_status status) {
  if (status != SDP_OK) throw CliError{status, sdp_last_error()};
}

[[noreturn]] void fail(const std::string& message) {
  throw CliError{SDP_ERR_INVALID_ARGUMENT, message};
}

struct MechanismHandle {
  sdp_mechanism* m = nullptr;
  ~MechanismHandle() { sdp_mechanism_destroy(m); }
};

struct ProfileHandle {
  sdp_profile* p = nullptr;
  ~ProfileHandle() { sdp_profile_destroy(p); }
};

// Shortest exact decimal form used for every number the tool emits.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON value for a double; infinities and NaN become strings because JSON
// has no literal for them.
ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

// Comma-separated scalars, each either a number or an inclusive A..B range
// stepping by 1 (e.g. "0.5,1..4,8").
std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) fail("empty entry in list '" + text + "'");
    auto dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stod(token));
      } else {
        double a = std::stod(token.substr(0, dots));
        double b = std::stod(token.substr(dots + 2));
        if (!(a <= b)) fail("empty range '" + token + "'");
        for (double v = a; v <= b + 1e-9; v += 1.0) out.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      fail("cannot parse list entry '" + token + "'");
    } catch (const std::out_of_range&) {
      fail("list entry out of range: '" + token + "'");
    }
  }
  if (out.empty()) fail("list '" + text + "' is empty");
  return out;
}

struct Options {
  double eps = 1.0;
  double delta = 1.0;
  int dim = 1;
  double p = 1.0;
  double gamma = 0.5;
  bool gamma_set = false;
  bool optimize_first = false;
  std::string cost_kind = "power";
  double q = 1.0;
  double lambda = 1.0;
  double cap = 1.0;
  std::int64_t samples = 0;  // per-command default applied at setup
  std::uint64_t seed = 0;
  std::string format;  // per-command default applied at setup
  double tail_tol = 1e-12;
  std::string out_path;
  std::string eps_list = "1..15";
  std::string dim_list;
  bool mc_check = false;
  std::string from_file;
};

sdp_cost_spec cost_spec(const Options& opt) {
  sdp_cost_spec cost;
  cost.q = opt.q;
  cost.lambda = opt.lambda;
  cost.cap = opt.cap;
  if (opt.cost_kind == "power") {
    cost.kind = SDP_COST_POWER;
  } else if (opt.cost_kind == "threshold") {
    cost.kind = SDP_COST_THRESHOLD;
  } else if (opt.cost_kind == "truncated") {
    cost.kind = SDP_COST_TRUNCATED;
  } else {
    fail("unknown cost kind '" + opt.cost_kind + "'");
  }
  return cost;
}

// The cost parameter that matters for the configured kind, echoed in CSV
// headers and used when optimizing.
std::string cost_config_lines(const Options& opt) {
  std::string lines = "# cost=" + opt.cost_kind + "\n";
  if (opt.cost_kind == "power") lines += "# q=" + fmt(opt.q) + "\n";
  if (opt.cost_kind == "threshold") lines += "# lambda=" + fmt(opt.lambda) + "\n";
  if (opt.cost_kind == "truncated") lines += "# cap=" + fmt(opt.cap) + "\n";
  return lines;
}

void require_format(const Options& opt, const std::string& expected,
                    const std::string& command) {
  if (opt.format != expected) {
    fail("the " + command + " command emits " + expected + " only");
  }
}

// Resolves gamma for commands that need a concrete mechanism: exactly one
// of --gamma / --optimize.
double resolve_gamma(const Options& opt) {
  if (opt.gamma_set && opt.optimize_first) {
    fail("pass either --gamma or --optimize, not both");
  }
  if (opt.optimize_first) {
    sdp_cost_spec cost = cost_spec(opt);
    double gamma = 0.0;
    check(sdp_find_gamma_star(opt.eps, opt.delta, opt.dim, opt.p, &cost, 0, 0,
                              &gamma, nullptr));
    return gamma;
  }
  if (!opt.gamma_set) fail("--gamma is required (or pass --optimize)");
  return opt.gamma;
}

MechanismHandle make_mechanism(const Options& opt, double gamma) {
  MechanismHandle mech;
  check(sdp_mechanism_create(opt.eps, opt.delta, opt.dim, opt.p, gamma,
                             opt.tail_tol, &mech.m));
  return mech;
}

std::string run_sample(const Options& opt) {
  require_format(opt, "csv", "sample");
  if (opt.samples < 0) fail("--samples must be >= 0");
  double gamma = resolve_gamma(opt);
  MechanismHandle mech = make_mechanism(opt, gamma);
  std::vector<double> buf(static_cast<std::size_t>(opt.samples) * opt.dim);
  check(sdp_mechanism_sample(mech.m, opt.seed, opt.samples,
                             buf.empty() ? nullptr : buf.data()));

  std::string text;
  text += "# command=sample\n";
  text += "# eps=" + fmt(opt.eps) + "\n";
  text += "# delta=" + fmt(opt.delta) + "\n";
  text += "# dim=" + std::to_string(opt.dim) + "\n";
  text += "# p=" + fmt(opt.p) + "\n";
  text += "# gamma=" + fmt(gamma) + "\n";
  text += "# samples=" + std::to_string(opt.samples) + "\n";
  text += "# seed=" + std::to_string(opt.seed) + "\n";
  text += "# tail_tol=" + fmt(opt.tail_tol) + "\n";
  for (int d = 0; d < opt.dim; ++d) {
    text += (d ? ",x" : "x") + std::to_string(d);
  }
  text += "\n";
  for (std::int64_t i = 0; i < opt.samples; ++i) {
    for (int d = 0; d < opt.dim; ++d) {
      if (d) text += ",";
      text += fmt(buf[static_cast<std::size_t>(i) * opt.dim + d]);
    }
    text += "\n";
  }
  return text;
}

// Reads a sample CSV back: '#' comment lines, then the coordinate header,
// then one row of `dim` comma-separated doubles per draw.
std::vector<double> read_sample_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) fail("cannot open sample file '" + path + "'");
  std::vector<double> flat;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // coordinate-name row
      continue;
    }
    std::stringstream row(line);
    std::string cell;
    int cols = 0;
    while (std::getline(row, cell, ',')) {
      try {
        flat.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail("bad numeric cell '" + cell + "' in '" + path + "'");
      }
      ++cols;
    }
    if (cols != dim) {
      fail("row with " + std::to_string(cols) + " columns, expected " +
           std::to_string(dim));
    }
  }
  if (!header_seen) fail("sample file '" + path + "' has no header row");
  return flat;
}

std::string run_cost(const Options& opt) {
  require_format(opt, "json", "cost");
  double gamma = resolve_gamma(opt);
  MechanismHandle mech = make_mechanism(opt, gamma);
  sdp_cost_spec cost = cost_spec(opt);

  double series = 0.0;
  check(sdp_mechanism_cost_series(mech.m, &cost, 0.0, &series));

  double mean = 0.0;
  double se = 0.0;
  if (!opt.from_file.empty()) {
    std::vector<double> flat = read_sample_file(opt.from_file, opt.dim);
    std::int64_t count = static_cast<std::int64_t>(flat.size()) / opt.dim;
    check(sdp_cost_from_samples(opt.dim, opt.p, &cost,
                                flat.empty() ? nullptr : flat.data(), count,
                                &mean, &se));
  } else {
    if (opt.samples < 1) fail("--samples must be >= 1");
    check(sdp_mechanism_cost_mc(mech.m, &cost, opt.seed, opt.samples, &mean,
                                &se));
  }

  ordered_json doc;
  doc["series"] = jnum(series);
  doc["mc_mean"] = jnum(mean);
  doc["mc_stderr"] = jnum(se);
  return doc.dump() + "\n";
}

std::string run_optimize(const Options& opt) {
  require_format(opt, "json", "optimize");
  sdp_cost_spec cost = cost_spec(opt);
  double gamma = 0.0;
  double best_cost = 0.0;
  check(sdp_find_gamma_star(opt.eps, opt.delta, opt.dim, opt.p, &cost, 0, 0,
                            &gamma, &best_cost));
  ordered_json doc;
  doc["gamma_star"] = jnum(gamma);
  doc["cost"] = jnum(best_cost);
  return doc.dump() + "\n";
}

std::string run_sweep(const Options& opt) {
  require_format(opt, "csv", "sweep");
  std::vector<double> eps_values = parse_number_list(opt.eps_list);
  std::vector<int> dims;
  if (opt.dim_list.empty()) {
    dims.push_back(opt.dim);
  } else {
    for (double v : parse_number_list(opt.dim_list)) {
      int d = static_cast<int>(std::llround(v));
      if (std::abs(v - d) > 1e-9) fail("--dim-list entries must be integers");
      dims.push_back(d);
    }
  }
  // Rows come out ordered by (eps, dim) no matter how the lists were given.
  std::sort(eps_values.begin(), eps_values.end());
  std::sort(dims.begin(), dims.end());
  sdp_cost_spec cost = cost_spec(opt);
  std::vector<double> rows(eps_values.size() * dims.size() * SDP_SWEEP_COLS);
  check(sdp_tradeoff_sweep(eps_values.data(),
                           static_cast<int>(eps_values.size()), dims.data(),
                           static_cast<int>(dims.size()), opt.p, &cost,
                           opt.mc_check ? 1 : 0, opt.seed, opt.samples,
                           rows.data()));

  std::string text;
  text += "# command=sweep\n";
  text += "# p=" + fmt(opt.p) + "\n";
  text += cost_config_lines(opt);
  text += "# mc_check=" + std::string(opt.mc_check ? "1" : "0") + "\n";
  text += "# samples=" + std::to_string(opt.samples) + "\n";
  text += "# seed=" + std::to_string(opt.seed) + "\n";
  text += "# eps_list=";
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    text += (i ? "," : "") + fmt(eps_values[i]);
  }
  text += "\n# dim_list=";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    text += (i ? "," : "") + std::to_string(dims[i]);
  }
  text += "\n";
  text +=
      "eps,dim,p,gamma_star,staircase_cost,laplace_cost,mc_checked,mc_mean,"
      "mc_stderr\n";
  std::size_t n_rows = eps_values.size() * dims.size();
  for (std::size_t i = 0; i < n_rows; ++i) {
    const double* r = &rows[i * SDP_SWEEP_COLS];
    text += fmt(r[0]) + "," + std::to_string(static_cast<int>(r[1])) + "," +
            fmt(r[2]) + "," + fmt(r[3]) + "," + fmt(r[4]) + "," + fmt(r[5]) +
            "," + std::string(r[6] != 0.0 ? "1" : "0") + "," + fmt(r[7]) +
            "," + fmt(r[8]) + "\n";
  }
  return text;
}

std::string run_verify(const Options& opt) {
  require_format(opt, "json", "verify");
  if (opt.samples < 1) fail("--samples must be >= 1");
  double gamma = resolve_gamma(opt);
  MechanismHandle mech = make_mechanism(opt, gamma);
  double max_ratio = 0.0;
  std::vector<double> wx(opt.dim, 0.0);
  std::vector<double> wy(opt.dim, 0.0);
  int passed = 0;
  std::int64_t tested = 0;
  check(sdp_mechanism_check_ratio_pairs(mech.m, opt.seed, opt.samples,
                                        &max_ratio, wx.data(), wy.data(),
                                        &passed, &tested));
  ordered_json doc;
  doc["max_ratio"] = jnum(max_ratio);
  doc["witness_x"] = ordered_json::array();
  doc["witness_y"] = ordered_json::array();
  for (double v : wx) doc["witness_x"].push_back(jnum(v));
  for (double v : wy) doc["witness_y"].push_back(jnum(v));
  doc["passed"] = passed != 0;
  doc["pairs_tested"] = tested;
  return doc.dump() + "\n";
}

std::string run_rearrange_demo(const Options& opt) {
  require_format(opt, "csv", "rearrange-demo");
  if (opt.dim != 1) fail("rearrange-demo is one-dimensional; --dim must be 1");
  ProfileHandle input;
  check(sdp_demo_profile(opt.eps, opt.delta, opt.seed, &input.p));
  ProfileHandle sorted;
  check(sdp_profile_rearrange(input.p, 1, &sorted.p));
  ProfileHandle matched;
  double pivot = 0.0;
  check(sdp_profile_mass_match(sorted.p, 1, opt.eps, opt.delta, &pivot,
                               &matched.p));

  std::string text;
  text += "# command=rearrange-demo\n";
  text += "# eps=" + fmt(opt.eps) + "\n";
  text += "# delta=" + fmt(opt.delta) + "\n";
  text += "# seed=" + std::to_string(opt.seed) + "\n";
  text += "# pivot_y=" + fmt(pivot) + "\n";
  text += "# note=profiles continue by exact geometric decay past their "
          "last plateau\n";
  text += "stage,plateau,r_lo,r_hi,value,cdf_r_hi\n";
  auto emit_stage = [&](const char* stage, const ProfileHandle& ph) {
    int count = sdp_profile_plateau_count(ph.p);
    for (int i = 0; i < count; ++i) {
      double lo = 0.0;
      double hi = 0.0;
      double value = 0.0;
      check(sdp_profile_plateau(ph.p, i, &lo, &hi, &value));
      double cdf = 0.0;
      check(sdp_profile_cdf(ph.p, 1, opt.p, hi, &cdf));
      text += std::string(stage) + "," + std::to_string(i) + "," + fmt(lo) +
              "," + fmt(hi) + "," + fmt(value) + "," + fmt(cdf) + "\n";
    }
  };
  emit_stage("input", input);
  emit_stage("rearranged", sorted);
  emit_stage("mass_matched", matched);
  return text;
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) fail("cannot open output file '" + opt.out_path + "'");
  out << text;
  if (!out) fail("failed writing output file '" + opt.out_path + "'");
}

void add_mechanism_flags(CLI::App* cmd, Options* opt) {
  cmd->add_option("--eps", opt->eps, "Privacy budget eps > 0");
  cmd->add_option("--delta", opt->delta, "Query sensitivity > 0");
  cmd->add_option("--dim", opt->dim, "Ambient dimension (>= 1)");
  cmd->add_option("--p", opt->p, "Norm exponent p >= 1 (inf for max norm)");
  cmd->add_option("--tail-tol", opt->tail_tol,
                  "Band-table truncation tolerance");
}

void add_gamma_flags(CLI::App* cmd, Options* opt) {
  cmd->add_option("--gamma", opt->gamma, "Plateau split in [0, 1]")
      ->each([opt](const std::string&) { opt->gamma_set = true; });
  cmd->add_flag("--optimize", opt->optimize_first,
                "Use the cost-optimal gamma instead of --gamma");
}

void add_cost_flags(CLI::App* cmd, Options* opt) {
  cmd->add_option("--cost", opt->cost_kind,
                  "Cost kind: power, threshold, or truncated")
      ->check(CLI::IsMember({"power", "threshold", "truncated"}));
  cmd->add_option("--q", opt->q, "Power-cost exponent (q > 0)");
  cmd->add_option("--lambda", opt->lambda, "Threshold-cost level (>= 0)");
  cmd->add_option("--cap", opt->cap, "Truncated-cost cap (>= 0)");
}

void add_io_flags(CLI::App* cmd, Options* opt, const char* default_format) {
  opt->format = default_format;
  cmd->add_option("--format", opt->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opt->out_path, "Write output to a file");
  cmd->add_option("--seed", opt->seed, "Root seed (64-bit unsigned)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "staircase-dp: optimal staircase noise for eps-differentially-private "
      "vector queries under lp norms"};
  app.require_subcommand(1);

  Options sample_opt;
  Options cost_opt;
  Options optimize_opt;
  Options sweep_opt;
  Options verify_opt;
  Options demo_opt;

  CLI::App* sample = app.add_subcommand(
      "sample", "Draw noise vectors (CSV, one row per draw)");
  add_mechanism_flags(sample, &sample_opt);
  add_gamma_flags(sample, &sample_opt);
  add_cost_flags(sample, &sample_opt);
  sample_opt.samples = 1000;
  sample->add_option("--samples", sample_opt.samples, "Number of draws");
  add_io_flags(sample, &sample_opt, "csv");

  CLI::App* cost = app.add_subcommand(
      "cost", "Expected cost: exact series plus Monte Carlo (JSON)");
  add_mechanism_flags(cost, &cost_opt);
  add_gamma_flags(cost, &cost_opt);
  add_cost_flags(cost, &cost_opt);
  cost_opt.samples = 100000;
  cost->add_option("--samples", cost_opt.samples, "Monte Carlo draws");
  cost->add_option("--from-file", cost_opt.from_file,
                   "Estimate from a stored sample CSV instead of fresh draws");
  add_io_flags(cost, &cost_opt, "json");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Minimize expected cost over gamma (JSON)");
  add_mechanism_flags(optimize, &optimize_opt);
  add_cost_flags(optimize, &optimize_opt);
  add_io_flags(optimize, &optimize_opt, "json");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Staircase-vs-Laplace tradeoff grid over (eps, dim) (CSV)");
  add_mechanism_flags(sweep, &sweep_opt);
  add_cost_flags(sweep, &sweep_opt);
  sweep->add_option("--eps-list", sweep_opt.eps_list,
                    "Comma list / A..B ranges of eps values");
  sweep->add_option("--dim-list", sweep_opt.dim_list,
                    "Comma list / A..B ranges of dimensions (default: --dim)");
  sweep->add_flag("--mc-check", sweep_opt.mc_check,
                  "Cross-check each row by Monte Carlo");
  sweep_opt.samples = 200000;
  sweep->add_option("--samples", sweep_opt.samples,
                    "Monte Carlo draws per cross-check");
  add_io_flags(sweep, &sweep_opt, "csv");

  CLI::App* verify = app.add_subcommand(
      "verify", "Fuzz the eps-DP density-ratio bound (JSON report)");
  add_mechanism_flags(verify, &verify_opt);
  add_gamma_flags(verify, &verify_opt);
  verify_opt.samples = 100000;
  verify->add_option("--samples", verify_opt.samples, "Random pairs to test");
  add_io_flags(verify, &verify_opt, "json");

  CLI::App* demo = app.add_subcommand(
      "rearrange-demo",
      "Rearrangement pipeline on a seeded density: input, decreasing "
      "rearrangement, mass-matched extension (CSV)");
  add_mechanism_flags(demo, &demo_opt);
  add_io_flags(demo, &demo_opt, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json err;
    err["error"]["status"] = "invalid_argument";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }

  try {
    std::string text;
    const Options* opt = nullptr;
    if (sample->parsed()) {
      text = run_sample(sample_opt);
      opt = &sample_opt;
    } else if (cost->parsed()) {
      text = run_cost(cost_opt);
      opt = &cost_opt;
    } else if (optimize->parsed()) {
      text = run_optimize(optimize_opt);
      opt = &optimize_opt;
    } else if (sweep->parsed()) {
      text = run_sweep(sweep_opt);
      opt = &sweep_opt;
    } else if (verify->parsed()) {
      text = run_verify(verify_opt);
      opt = &verify_opt;
    } else if (demo->parsed()) {
      text = run_rearrange_demo(demo_opt);
      opt = &demo_opt;
    } else {
      fail("no command given");
    }
    write_output(*opt, text);
    return 0;
  } catch (const CliError& e) {
    ordered_json err;
    err["error"]["status"] = sdp_status_name(e.status);
    err["error"]["message"] = e.message;
    std::cerr << err.dump() << "\n";
    return static_cast<int>(e.status);
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"]["status"] = "internal";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return static_cast<int>(SDP_ERR_INTERNAL);
  }
}
