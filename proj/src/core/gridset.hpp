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

#ifndef STAIRCASE_CORE_GRIDSET_HPP
#define STAIRCASE_CORE_GRIDSET_HPP

#include <vector>

namespace staircase {

// Half-open interval [lo, hi); empty when hi <= lo.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Finite union of half-open intervals on the real line, kept sorted,
// disjoint and nonempty (touching pieces are merged on construction).
// All set algebra here is exact interval arithmetic: endpoints are only
// copied, added, or compared, never approximated.
class GridSet {
 public:
  GridSet() = default;
  explicit GridSet(std::vector<Interval> pieces);

  static GridSet interval(double lo, double hi);

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double measure() const;

 private:
  std::vector<Interval> pieces_;
};

GridSet set_union(const GridSet& a, const GridSet& b);
GridSet set_intersection(const GridSet& a, const GridSet& b);
// a \ b
GridSet set_difference(const GridSet& a, const GridSet& b);
// {x + y : x in a, y in b}; half-open convention is preserved.
GridSet minkowski_sum(const GridSet& a, const GridSet& b);

// Symmetric decreasing rearrangement: the centered ball (interval) with the
// same measure under the volume law V(r) = ball_volume_coeff * r^n, i.e.
// radius r = (|A| / ball_volume_coeff)^{1/n}. Empty sets map to empty sets.
GridSet rearrange_set(const GridSet& a, double ball_volume_coeff, int n);

}  // namespace staircase

#endif  // STAIRCASE_CORE_GRIDSET_HPP
