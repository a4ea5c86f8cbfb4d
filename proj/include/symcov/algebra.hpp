/**
 * Copyright 2026 The symcov Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SYMCOV_ALGEBRA_HPP
#define SYMCOV_ALGEBRA_HPP

#include "symcov/error.hpp"
#include "symcov/interval.hpp"

#include <cmath>

// Moore interval arithmetic in the center/range parameterization. Centers
// combine linearly; ranges combine with absolute weights, so ranges add under
// subtraction as well as addition. No outward rounding is applied.

namespace symcov {

/// x -> scale * x + offset.
struct AffineSpec {
  double scale = 1.0;
  double offset = 0.0;

  AffineSpec() = default;
  AffineSpec(double s, double o) : scale(s), offset(o) {
    if (!std::isfinite(s) || !std::isfinite(o)) {
      detail::fail_input("affine: non-finite scale or offset");
    }
  }
};

inline Interval add(const Interval& x, const Interval& y) {
  return Interval::from_center_range(x.center() + y.center(),
                                     x.range() + y.range());
}

inline Interval sub(const Interval& x, const Interval& y) {
  return Interval::from_center_range(x.center() - y.center(),
                                     x.range() + y.range());
}

inline Interval affine(const Interval& x, const AffineSpec& t) {
  return Interval::from_center_range(t.scale * x.center() + t.offset,
                                     std::fabs(t.scale) * x.range());
}

inline Interval lincomb2(double w1, const Interval& x1, double w2,
                         const Interval& x2) {
  if (!std::isfinite(w1) || !std::isfinite(w2)) {
    detail::fail_input("lincomb2: non-finite weight");
  }
  return Interval::from_center_range(
      w1 * x1.center() + w2 * x2.center(),
      std::fabs(w1) * x1.range() + std::fabs(w2) * x2.range());
}

} // namespace symcov

#endif // SYMCOV_ALGEBRA_HPP
