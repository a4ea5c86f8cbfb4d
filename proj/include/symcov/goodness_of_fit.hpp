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
#ifndef SYMCOV_GOODNESS_OF_FIT_HPP
#define SYMCOV_GOODNESS_OF_FIT_HPP

#include "symcov/error.hpp"
#include "symcov/parallel.hpp"
#include "symcov/random.hpp"
#include "symcov/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Goodness of fit of recovered weights against a fully specified candidate
// family: the Anderson-Darling statistic with a parametric-simulation p-value,
// and a pointwise QQ envelope whose exceedance fraction is the selection
// criterion. Both are computed from one NullReference: B simulated samples of
// the same size, each sorted.

namespace symcov {

inline constexpr double kCdfClamp = 1e-15;

/// A^2 = -n - (1/n) sum_i (2i - 1) [ln F(u_(i)) + ln(1 - F(u_(n+1-i)))].
///
/// sorted must be nondecreasing and inside [-1, 1]. F is clamped to
/// [1e-15, 1 - 1e-15] so a point on the support boundary stays finite.
inline double ad_statistic(std::span<const double> sorted, WeightFamily family) {
  const std::size_t n = sorted.size();
  if (n == 0) detail::fail_input("anderson-darling: empty sample");
  if (!is_continuous(family)) {
    detail::fail_input("anderson-darling needs a continuous family, got " +
                       std::string(family_name(family)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sorted[i] >= -1.0 && sorted[i] <= 1.0)) {
      detail::fail_input("anderson-darling: value outside [-1, 1]");
    }
    if (i > 0 && sorted[i] < sorted[i - 1]) {
      detail::fail_input("anderson-darling: sample is not sorted");
    }
  }
  std::vector<double> cdf(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdf[i] = std::clamp(weight_cdf(family, sorted[i]), kCdfClamp, 1.0 - kCdfClamp);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double coeff = 2.0 * static_cast<double>(i) + 1.0;
    s += coeff * (std::log(cdf[i]) + std::log1p(-cdf[n - 1 - i]));
  }
  const double nn = static_cast<double>(n);
  return -nn - s / nn;
}

/// Type-7 (linear interpolation) sample quantile of sorted values.
inline double sorted_quantile(std::span<const double> sorted, double prob) {
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Null distribution of a family at one sample size: A^2 of each replicate
/// (ascending) and the pointwise band of every order statistic.
struct NullReference {
  WeightFamily family;
  std::size_t n = 0;
  std::size_t replicates = 0;
  double level = 0.95;
  std::vector<double> ad_sorted;
  std::vector<double> band_lo;
  std::vector<double> band_hi;

  /// (#{A^2_b >= observed} + 1) / (B + 1).
  double p_value(double observed) const {
    auto it = std::lower_bound(ad_sorted.begin(), ad_sorted.end(), observed);
    const auto count = static_cast<double>(ad_sorted.end() - it);
    return (count + 1.0) / (static_cast<double>(replicates) + 1.0);
  }
};

inline NullReference build_null_reference(WeightFamily family, std::size_t n,
                                          std::size_t replicates, double level,
                                          RngSeed seed) {
  if (!is_continuous(family)) {
    detail::fail_input("null reference needs a continuous family, got " +
                       std::string(family_name(family)));
  }
  if (n == 0 || replicates < 2) {
    detail::fail_input("null reference needs n >= 1 and at least 2 replicates");
  }
  if (!(level > 0.0 && level < 1.0)) {
    detail::fail_input("envelope level must be in (0, 1)");
  }
  NullReference ref{family, n, replicates, level, {}, {}, {}};
  std::vector<double> draws(replicates * n);
  ref.ad_sorted.resize(replicates);
  parallel_for(replicates, [&](std::size_t b) {
    RandomStream rng(seed, {std::uint64_t(StreamPurpose::null_reference),
                            std::uint64_t(family), n, b});
    std::span<double> sample(draws.data() + b * n, n);
    for (double& u : sample) u = sample_weight(family, rng);
    std::sort(sample.begin(), sample.end());
    ref.ad_sorted[b] = ad_statistic(sample, family);
  });
  std::sort(ref.ad_sorted.begin(), ref.ad_sorted.end());

  ref.band_lo.resize(n);
  ref.band_hi.resize(n);
  const double tail = 0.5 * (1.0 - level);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> order(replicates);
    for (std::size_t b = 0; b < replicates; ++b) order[b] = draws[b * n + i];
    std::sort(order.begin(), order.end());
    ref.band_lo[i] = sorted_quantile(order, tail);
    ref.band_hi[i] = sorted_quantile(order, 1.0 - tail);
  });
  return ref;
}

struct AdTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

inline AdTestResult ad_test(const NullReference& ref,
                            std::span<const double> sorted) {
  if (sorted.size() != ref.n) {
    detail::fail_input("anderson-darling: sample size differs from reference");
  }
  const double a2 = ad_statistic(sorted, ref.family);
  return {a2, ref.p_value(a2)};
}

/// Anderson-Darling test of sample against the model's family, with a
/// p-value from `replicates` simulated samples of the same size.
inline AdTestResult ad_test(std::span<const double> sample,
                            const WeightModel& model, std::size_t replicates,
                            RngSeed seed) {
  if (!is_continuous(model.family)) {
    detail::fail_input("anderson-darling test needs a continuous family, got " +
                       std::string(family_name(model.family)));
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto ref =
      build_null_reference(model.family, sorted.size(), replicates, 0.95, seed);
  return ad_test(ref, sorted);
}

struct QqEnvelope {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> observed; ///< sorted sample
  double exceedance = 0.0;      ///< fraction of observed outside [lo, hi]
};

inline constexpr std::size_t kMinEnvelopeSample = 10;

inline QqEnvelope qq_envelope(const NullReference& ref,
                              std::span<const double> sorted) {
  if (sorted.size() != ref.n) {
    detail::fail_input("qq envelope: sample size differs from reference");
  }
  QqEnvelope env{ref.band_lo, ref.band_hi,
                 std::vector<double>(sorted.begin(), sorted.end()), 0.0};
  std::size_t outside = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < env.lo[i] || sorted[i] > env.hi[i]) ++outside;
  }
  env.exceedance =
      static_cast<double>(outside) / static_cast<double>(sorted.size());
  return env;
}

/// Pointwise envelope at `level` from `replicates` simulated samples, and the
/// fraction of observed order statistics outside it. Needs n >= 10.
inline QqEnvelope qq_envelope(std::span<const double> sample,
                              const WeightModel& model, double level,
                              std::size_t replicates, RngSeed seed) {
  if (!is_continuous(model.family)) {
    detail::fail_input("qq envelope needs a continuous family, got " +
                       std::string(family_name(model.family)));
  }
  if (sample.size() < kMinEnvelopeSample) {
    detail::fail_input("qq envelope needs at least 10 points, got " +
                       std::to_string(sample.size()));
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto ref =
      build_null_reference(model.family, sorted.size(), replicates, level, seed);
  return qq_envelope(ref, sorted);
}

/// Exact support check for the discrete families: the fraction of values not
/// equal (to 1e-9) to a support point, i.e. |u| != 1 for Unif{-1, 1} and
/// u != 0 for the point mass.
inline double support_violation(std::span<const double> sample,
                                WeightFamily family) {
  if (is_continuous(family)) {
    detail::fail_input("support check applies to discrete families only");
  }
  if (sample.empty()) return 0.0;
  std::size_t bad = 0;
  for (double u : sample) {
    const bool ok = family == WeightFamily::point_mass_zero
                        ? std::fabs(u) <= 1e-9
                        : std::fabs(std::fabs(u) - 1.0) <= 1e-9;
    if (!ok) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(sample.size());
}

} // namespace symcov

#endif // SYMCOV_GOODNESS_OF_FIT_HPP
