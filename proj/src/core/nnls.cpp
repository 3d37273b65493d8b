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

#include "core/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace staircase {

namespace {

// Solves the symmetric positive definite system g z = rhs restricted to the
// index set `active` via Cholesky; g is cols x cols. Returns false if the
// restricted Gram matrix is numerically singular.
bool solve_restricted(const std::vector<double>& g,
                      const std::vector<double>& rhs, int cols,
                      const std::vector<int>& active, std::vector<double>* z) {
  int m = static_cast<int>(active.size());
  std::vector<double> l(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> y(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g[static_cast<std::size_t>(active[i]) * cols + active[j]];
      for (int k = 0; k < j; ++k) {
        s -= l[static_cast<std::size_t>(i) * m + k] *
             l[static_cast<std::size_t>(j) * m + k];
      }
      if (i == j) {
        if (!(s > 0.0)) return false;
        l[static_cast<std::size_t>(i) * m + i] = std::sqrt(s);
      } else {
        l[static_cast<std::size_t>(i) * m + j] =
            s / l[static_cast<std::size_t>(j) * m + j];
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    double s = rhs[active[i]];
    for (int k = 0; k < i; ++k) {
      s -= l[static_cast<std::size_t>(i) * m + k] * y[k];
    }
    y[i] = s / l[static_cast<std::size_t>(i) * m + i];
  }
  std::vector<double> zr(m, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < m; ++k) {
      s -= l[static_cast<std::size_t>(k) * m + i] * zr[k];
    }
    zr[i] = s / l[static_cast<std::size_t>(i) * m + i];
  }
  std::fill(z->begin(), z->end(), 0.0);
  for (int i = 0; i < m; ++i) (*z)[active[i]] = zr[i];
  return true;
}

}  // namespace

std::vector<double> nnls(const std::vector<double>& a, int rows, int cols,
                         const std::vector<double>& b, double tol) {
  require(rows >= 1 && cols >= 1, ErrorCode::kInvalidArgument,
          "nnls needs at least one row and one column");
  require(a.size() == static_cast<std::size_t>(rows) * cols,
          ErrorCode::kDimensionMismatch, "nnls matrix size mismatch");
  require(b.size() == static_cast<std::size_t>(rows),
          ErrorCode::kDimensionMismatch, "nnls rhs size mismatch");
  require(std::isfinite(tol) && tol >= 0.0, ErrorCode::kInvalidArgument,
          "nnls tolerance must be >= 0");

  // Normal equations: gram = A^T A, atb = A^T b.
  std::vector<double> gram(static_cast<std::size_t>(cols) * cols, 0.0);
  std::vector<double> atb(cols, 0.0);
  for (int ci = 0; ci < cols; ++ci) {
    const double* col_i = &a[static_cast<std::size_t>(ci) * rows];
    for (int cj = 0; cj <= ci; ++cj) {
      const double* col_j = &a[static_cast<std::size_t>(cj) * rows];
      double s = 0.0;
      for (int r = 0; r < rows; ++r) s += col_i[r] * col_j[r];
      gram[static_cast<std::size_t>(ci) * cols + cj] = s;
      gram[static_cast<std::size_t>(cj) * cols + ci] = s;
    }
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += col_i[r] * b[r];
    atb[ci] = s;
  }

  std::vector<double> x(cols, 0.0);
  std::vector<double> z(cols, 0.0);
  std::vector<int> passive;
  std::vector<char> in_passive(cols, 0);

  // w = atb - gram x is minus the gradient of 1/2 ||Ax - b||^2; at the
  // constrained optimum every clamped coordinate has w <= 0.
  auto neg_gradient = [&](int j) {
    double s = atb[j];
    for (int k = 0; k < cols; ++k) {
      s -= gram[static_cast<std::size_t>(j) * cols + k] * x[k];
    }
    return s;
  };

  const int max_rounds = 10 * cols + 10;
  for (int outer = 0; outer < max_rounds; ++outer) {
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < cols; ++j) {
      if (in_passive[j]) continue;
      double w = neg_gradient(j);
      if (w > best_w) {
        best_w = w;
        best = j;
      }
    }
    if (best < 0) break;  // dual feasible: optimal
    passive.push_back(best);
    in_passive[best] = 1;

    for (int inner = 0; inner < max_rounds; ++inner) {
      if (!solve_restricted(gram, atb, cols, passive, &z)) {
        // Numerically dependent column: drop the newest and stop growing.
        in_passive[passive.back()] = 0;
        passive.pop_back();
        break;
      }
      double zmin = 0.0;
      for (int j : passive) zmin = std::min(zmin, z[j]);
      if (zmin > 0.0) {
        x = z;
        break;
      }
      // Step toward z until the first passive coordinate hits zero, then
      // retire every coordinate that reached the boundary.
      double alpha = 1.0;
      int binding = -1;
      for (int j : passive) {
        if (z[j] <= 0.0 && x[j] > z[j]) {
          double step = x[j] / (x[j] - z[j]);
          if (step < alpha) {
            alpha = step;
            binding = j;
          }
        }
      }
      for (int j : passive) x[j] += alpha * (z[j] - x[j]);
      std::vector<int> keep;
      for (int j : passive) {
        if (j != binding && x[j] > 1e-14) {
          keep.push_back(j);
        } else {
          x[j] = 0.0;
          in_passive[j] = 0;
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
    }
  }
  for (double& v : x) {
    if (v < 0.0) v = 0.0;
  }
  return x;
}

}  // namespace staircase
