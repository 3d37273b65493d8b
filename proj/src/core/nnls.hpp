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

#ifndef STAIRCASE_CORE_NNLS_HPP
#define STAIRCASE_CORE_NNLS_HPP

#include <vector>

namespace staircase {

// Dense nonnegative least squares, min ||A x - b|| subject to x >= 0, by
// active-set iteration on the normal equations. Sized for the small systems
// the mixture decomposition produces (tens of columns).
//
// `a` is column-major with rows x cols entries: a[c * rows + r]. Returns x
// of length cols with every entry >= 0. `tol` bounds the dual feasibility
// test: gradient entries below tol count as nonpositive.
std::vector<double> nnls(const std::vector<double>& a, int rows, int cols,
                         const std::vector<double>& b, double tol = 1e-12);

}  // namespace staircase

#endif  // STAIRCASE_CORE_NNLS_HPP
