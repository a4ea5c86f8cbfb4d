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
#ifndef SYMCOV_NORMAL_HPP
#define SYMCOV_NORMAL_HPP

#include <cmath>
#include <numbers>

namespace symcov {

/// Standard normal density.
inline double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Standard normal distribution function, via erfc so the lower tail keeps
/// full relative precision.
inline double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Variance of N(0, sigma^2) conditioned on |Z| <= bound * sigma:
/// sigma^2 * (1 - 2 b phi(b) / (2 Phi(b) - 1)).
inline double truncated_normal_variance(double sigma, double bound) noexcept {
  const double mass = 2.0 * normal_cdf(bound) - 1.0;
  return sigma * sigma * (1.0 - 2.0 * bound * normal_pdf(bound) / mass);
}

} // namespace symcov

#endif // SYMCOV_NORMAL_HPP
