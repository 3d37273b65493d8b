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

#include "core/gridset.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace staircase {

GridSet::GridSet(std::vector<Interval> pieces) {
  pieces.erase(std::remove_if(pieces.begin(), pieces.end(),
                              [](const Interval& iv) { return !(iv.lo < iv.hi); }),
               pieces.end());
  for (const Interval& iv : pieces) {
    require(std::isfinite(iv.lo) && std::isfinite(iv.hi),
            ErrorCode::kInvalidArgument, "GridSet endpoints must be finite");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : pieces) {
    if (!pieces_.empty() && iv.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, iv.hi);
    } else {
      pieces_.push_back(iv);
    }
  }
}

GridSet GridSet::interval(double lo, double hi) {
  return GridSet(std::vector<Interval>{{lo, hi}});
}

double GridSet::measure() const {
  double m = 0.0;
  for (const Interval& iv : pieces_) m += iv.hi - iv.lo;
  return m;
}

GridSet set_union(const GridSet& a, const GridSet& b) {
  std::vector<Interval> pieces = a.intervals();
  pieces.insert(pieces.end(), b.intervals().begin(), b.intervals().end());
  return GridSet(std::move(pieces));
}

GridSet set_intersection(const GridSet& a, const GridSet& b) {
  std::vector<Interval> out;
  for (const Interval& x : a.intervals()) {
    for (const Interval& y : b.intervals()) {
      double lo = std::max(x.lo, y.lo);
      double hi = std::min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  }
  return GridSet(std::move(out));
}

GridSet set_difference(const GridSet& a, const GridSet& b) {
  std::vector<Interval> out;
  for (const Interval& x : a.intervals()) {
    double cursor = x.lo;
    for (const Interval& y : b.intervals()) {
      if (y.hi <= cursor || y.lo >= x.hi) continue;
      if (y.lo > cursor) out.push_back({cursor, y.lo});
      cursor = std::max(cursor, y.hi);
      if (cursor >= x.hi) break;
    }
    if (cursor < x.hi) out.push_back({cursor, x.hi});
  }
  return GridSet(std::move(out));
}

GridSet minkowski_sum(const GridSet& a, const GridSet& b) {
  std::vector<Interval> out;
  out.reserve(a.intervals().size() * b.intervals().size());
  for (const Interval& x : a.intervals()) {
    for (const Interval& y : b.intervals()) {
      out.push_back({x.lo + y.lo, x.hi + y.hi});
    }
  }
  return GridSet(std::move(out));
}

GridSet rearrange_set(const GridSet& a, double ball_volume_coeff, int n) {
  require(ball_volume_coeff > 0.0, ErrorCode::kInvalidArgument,
          "ball volume coefficient must be positive");
  require(n >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  if (a.empty()) return GridSet();
  double m = a.measure();
  double r = (n == 1) ? m / ball_volume_coeff
                      : std::pow(m / ball_volume_coeff, 1.0 / n);
  return GridSet::interval(-r, r);
}

}  // namespace staircase
