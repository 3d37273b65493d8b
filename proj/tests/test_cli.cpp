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

// Black-box tests of the command-line tool. The binary path arrives as the
// first program argument; every check goes through a real child process.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli_path;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string base = "/tmp/staircase_cli_" + std::to_string(getpid()) + "_" +
                     std::to_string(counter++);
  std::string out_path = base + ".out";
  std::string err_path = base + ".err";
  std::string cmd =
      "\"" + g_cli_path + "\" " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status >= 0 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

// Numeric rows of a CSV payload, skipping '#' comments and the header.
std::vector<std::vector<double>> data_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("every subcommand replays byte-identically from its seed") {
  const std::vector<std::string> commands = {
      "sample --eps 1 --delta 1 --dim 3 --p 1 --gamma 0.5 --samples 500 "
      "--seed 11",
      "cost --eps 1.5 --delta 0.8 --dim 2 --p 2 --gamma 0.4 --cost power "
      "--q 2 --samples 20000 --seed 12",
      "optimize --eps 2 --delta 1 --dim 1 --p 1 --cost power --q 1",
      "sweep --eps-list 1,2 --dim-list 1,2 --p 2 --cost power --q 1 "
      "--mc-check --samples 20000 --seed 13",
      "verify --eps 1 --delta 1 --dim 2 --p 2 --gamma 0.3 --samples 20000 "
      "--seed 14",
      "rearrange-demo --eps 1.1 --delta 0.9 --seed 15",
  };
  for (const std::string& cmd : commands) {
    CAPTURE(cmd);
    RunResult first = run_cli(cmd);
    RunResult second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.err.empty());
    CHECK(first.out.size() > 0);
    CHECK(first.out == second.out);
  }

  RunResult a = run_cli(
      "sample --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --samples 100 "
      "--seed 21");
  RunResult b = run_cli(
      "sample --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --samples 100 "
      "--seed 22");
  CHECK(a.out != b.out);
}

TEST_CASE("zero draws emit only the provenance header") {
  RunResult r = run_cli(
      "sample --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --samples 0 "
      "--seed 1");
  CHECK(r.exit_code == 0);
  CHECK(data_rows(r.out).empty());
  CHECK(r.out.find("x0\n") != std::string::npos);
}

TEST_CASE("stored draws reprice to the exact Monte Carlo estimate") {
  std::string draws = "/tmp/staircase_cli_roundtrip_" +
                      std::to_string(getpid()) + ".csv";
  std::string geometry =
      "--eps 1.3 --delta 0.7 --dim 2 --p 2 --gamma 0.35";
  RunResult wrote = run_cli("sample " + geometry +
                            " --samples 4096 --seed 99 --out " + draws);
  CHECK(wrote.exit_code == 0);
  CHECK(wrote.out.empty());

  RunResult from_file = run_cli("cost " + geometry +
                                " --cost power --q 1 --from-file " + draws);
  RunResult fresh = run_cli("cost " + geometry +
                            " --cost power --q 1 --samples 4096 --seed 99");
  CHECK(from_file.exit_code == 0);
  CHECK(fresh.exit_code == 0);
  CHECK(from_file.out == fresh.out);
  CHECK(from_file.out.find("\"series\":") != std::string::npos);
  CHECK(from_file.out.find("\"mc_mean\":") != std::string::npos);
  CHECK(from_file.out.find("\"mc_stderr\":") != std::string::npos);
  std::remove(draws.c_str());
}

TEST_CASE("failures exit nonzero with structured json on stderr") {
  RunResult bad_eps = run_cli(
      "cost --eps -1 --delta 1 --dim 1 --p 1 --gamma 0.5 --cost power --q 1");
  CHECK(bad_eps.exit_code == 1);
  CHECK(bad_eps.out.empty());
  CHECK(bad_eps.err.find("\"error\"") != std::string::npos);
  CHECK(bad_eps.err.find("invalid_argument") != std::string::npos);

  RunResult bad_gamma = run_cli(
      "sample --eps 1 --delta 1 --dim 1 --p 1 --gamma 1.5 --samples 1");
  CHECK(bad_gamma.exit_code == 1);
  CHECK(bad_gamma.err.find("invalid_argument") != std::string::npos);

  RunResult bad_file = run_cli(
      "cost --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --cost power --q 1 "
      "--from-file /tmp/definitely_missing_draws.csv");
  CHECK(bad_file.exit_code != 0);
  CHECK(bad_file.err.find("\"error\"") != std::string::npos);

  // Each subcommand owns one output format and says so.
  RunResult json_sample = run_cli(
      "sample --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --samples 1 "
      "--format json");
  CHECK(json_sample.exit_code == 1);
  CHECK(json_sample.err.find("csv only") != std::string::npos);
  RunResult csv_cost = run_cli(
      "cost --eps 1 --delta 1 --dim 1 --p 1 --gamma 0.5 --cost power --q 1 "
      "--format csv");
  CHECK(csv_cost.exit_code == 1);
  CHECK(csv_cost.err.find("json only") != std::string::npos);
}

TEST_CASE("the sweep prices staircase noise at or below the comparator") {
  RunResult r = run_cli(
      "sweep --eps-list 1..15 --dim-list 3 --p 1 --cost power --q 1 "
      "--seed 31");
  CHECK(r.exit_code == 0);
  auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 15);
  double prev_eps = 0.0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 9);
    CHECK(row[0] > prev_eps);
    prev_eps = row[0];
    CHECK(row[1] == 3.0);
    double staircase_cost = row[4];
    double laplace_cost = row[5];
    CHECK(staircase_cost <= laplace_cost * (1.0 + 1e-12));
    if (row[0] >= 4.0) CHECK(staircase_cost < laplace_cost);
  }
}

TEST_CASE("the demo pipeline reports all three stages and the pivot") {
  RunResult r = run_cli("rearrange-demo --eps 1 --delta 1 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# pivot_y=") != std::string::npos);
  CHECK(r.out.find("input,") != std::string::npos);
  CHECK(r.out.find("rearranged,") != std::string::npos);
  CHECK(r.out.find("mass_matched,") != std::string::npos);

  // The cdf column is nondecreasing within each stage.
  std::istringstream lines(r.out);
  std::string line, stage;
  double prev_cdf = 0.0;
  bool seen_header = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::istringstream cells(line);
    std::string name, cell;
    std::getline(cells, name, ',');
    std::vector<double> nums;
    while (std::getline(cells, cell, ',')) {
      nums.push_back(std::strtod(cell.c_str(), nullptr));
    }
    REQUIRE(nums.size() == 5);
    if (name != stage) {
      stage = name;
      prev_cdf = 0.0;
    }
    CHECK(nums.back() >= prev_cdf);
    prev_cdf = nums.back();
  }
}

int main(int argc, char** argv) {
  std::vector<char*> args;
  args.push_back(argv[0]);
  int start = 1;
  if (argc > 1 && argv[1][0] != '-') {
    g_cli_path = argv[1];
    start = 2;
  }
  for (int i = start; i < argc; ++i) args.push_back(argv[i]);
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cli> [doctest args]\n");
    return 2;
  }
  doctest::Context ctx(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
