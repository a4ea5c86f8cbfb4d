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
#ifndef SYMCOV_INTERVAL_HPP
#define SYMCOV_INTERVAL_HPP

#include "symcov/error.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace symcov {

/// Closed interval [a, b] stored as (center, range).
///
/// The limits are views: lower() = center - range/2, upper() = center +
/// range/2. An interval built from its limits keeps those exact limits so that
/// min/max aggregation and closed-interval membership are not disturbed by
/// rounding. A zero range is a conventional (single-valued) observation and is
/// legal everywhere.
class Interval {
public:
  /// The degenerate interval [0, 0].
  constexpr Interval() noexcept = default;

  /// Throws InputError unless center is finite and range is finite and >= 0.
  static Interval from_center_range(double center, double range) {
    if (!std::isfinite(center) || !std::isfinite(range)) {
      detail::fail_input("interval: non-finite center or range");
    }
    if (range < 0.0) {
      detail::fail_input("interval: negative range " + std::to_string(range));
    }
    return Interval(center, range, center - 0.5 * range, center + 0.5 * range);
  }

  /// A conventional value x as the interval [x, x].
  static Interval point(double x) { return from_center_range(x, 0.0); }

  constexpr double center() const noexcept { return center_; }
  constexpr double range() const noexcept { return range_; }
  constexpr double half_range() const noexcept { return 0.5 * range_; }
  constexpr double lower() const noexcept { return lower_; }
  constexpr double upper() const noexcept { return upper_; }
  constexpr bool degenerate() const noexcept { return range_ == 0.0; }

  /// Closed-interval membership.
  constexpr bool contains(double x) const noexcept {
    return lower() <= x && x <= upper();
  }

  /// Equality on the canonical (center, range) pair.
  friend constexpr bool operator==(const Interval& x, const Interval& y) noexcept {
    return x.center_ == y.center_ && x.range_ == y.range_;
  }

private:
  friend Interval interval_from_limits(double a, double b);

  constexpr Interval(double c, double r, double lo, double hi) noexcept
      : center_(c), range_(r), lower_(lo), upper_(hi) {}

  double center_ = 0.0;
  double range_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// [a, b] -> (center (a+b)/2, range b-a). Rejects a > b and non-finite input.
inline Interval interval_from_limits(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    detail::fail_input("interval: non-finite limit");
  }
  if (a > b) {
    detail::fail_input("interval: lower limit " + std::to_string(a) +
                       " exceeds upper limit " + std::to_string(b));
  }
  const double range = b - a;
  if (!std::isfinite(range)) detail::fail_input("interval: range overflows");
  // Halve before adding so that a+b cannot overflow.
  return Interval(0.5 * a + 0.5 * b, range, a, b);
}

inline std::pair<double, double> to_limits(const Interval& x) noexcept {
  return {x.lower(), x.upper()};
}

} // namespace symcov

#endif // SYMCOV_INTERVAL_HPP
