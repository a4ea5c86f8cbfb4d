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
#ifndef SYMCOV_WEIGHTS_HPP
#define SYMCOV_WEIGHTS_HPP

#include "symcov/cov_kind.hpp"
#include "symcov/error.hpp"
#include "symcov/normal.hpp"
#include "symcov/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

// Distributions of the latent weight U that places a micro observation inside
// its interval, A = C + U R / 2. Every family is symmetric with support in
// [-1, 1] and mean zero.

namespace symcov {

enum class WeightFamily {
  point_mass_zero,
  discrete_uniform_pm1,
  continuous_uniform,
  triangular,
  inverse_triangular,
  truncated_normal,
};

inline constexpr std::array<WeightFamily, 6> kAllWeightFamilies = {
    WeightFamily::point_mass_zero,    WeightFamily::discrete_uniform_pm1,
    WeightFamily::continuous_uniform, WeightFamily::triangular,
    WeightFamily::inverse_triangular, WeightFamily::truncated_normal,
};

inline std::string_view family_name(WeightFamily f) noexcept {
  switch (f) {
  case WeightFamily::point_mass_zero: return "point-mass-zero";
  case WeightFamily::discrete_uniform_pm1: return "discrete-uniform-pm1";
  case WeightFamily::continuous_uniform: return "continuous-uniform";
  case WeightFamily::triangular: return "triangular";
  case WeightFamily::inverse_triangular: return "inverse-triangular";
  case WeightFamily::truncated_normal: return "truncated-normal";
  }
  return "unknown";
}

inline WeightFamily parse_family(std::string_view name) {
  for (WeightFamily f : kAllWeightFamilies) {
    if (family_name(f) == name) return f;
  }
  detail::fail_input("unknown weight family \"" + std::string(name) + "\"");
}

/// Scenario 1: independent weights per variable. Scenario 2: one weight shared
/// by all variables of a micro observation.
enum class Scenario { independent = 1, shared = 2 };

struct WeightModel {
  WeightFamily family = WeightFamily::continuous_uniform;
  Scenario scenario = Scenario::independent;

  friend bool operator==(const WeightModel&, const WeightModel&) = default;
};

inline Scenario parse_scenario(int s) {
  if (s == 1) return Scenario::independent;
  if (s == 2) return Scenario::shared;
  detail::fail_input("scenario must be 1 or 2, got " + std::to_string(s));
}

/// True for families with a continuous distribution function.
inline bool is_continuous(WeightFamily f) noexcept {
  return f != WeightFamily::point_mass_zero &&
         f != WeightFamily::discrete_uniform_pm1;
}

/// Var(U).
inline double model_variance(WeightFamily f) noexcept {
  switch (f) {
  case WeightFamily::point_mass_zero: return 0.0;
  case WeightFamily::discrete_uniform_pm1: return 1.0;
  case WeightFamily::continuous_uniform: return 1.0 / 3.0;
  case WeightFamily::triangular: return 1.0 / 6.0;
  case WeightFamily::inverse_triangular: return 1.0 / 2.0;
  case WeightFamily::truncated_normal:
    return truncated_normal_variance(1.0 / 3.0, 3.0);
  }
  return 0.0;
}

inline double model_variance(const WeightModel& m) noexcept {
  return model_variance(m.family);
}

/// The covariance definition whose population matrix equals the covariance
/// of micro-data generated under this model, if it is one of the eight.
/// Scenario 2 only reproduces definitions 1, 2 and 3.
inline std::optional<CovKind> matching_kind(const WeightModel& m) {
  const bool shared = m.scenario == Scenario::shared;
  switch (m.family) {
  case WeightFamily::point_mass_zero: return CovKind(1);
  case WeightFamily::discrete_uniform_pm1: return CovKind(shared ? 2 : 4);
  case WeightFamily::continuous_uniform: return CovKind(shared ? 3 : 5);
  case WeightFamily::inverse_triangular:
    return shared ? std::nullopt : std::optional<CovKind>(CovKind(6));
  case WeightFamily::triangular:
    return shared ? std::nullopt : std::optional<CovKind>(CovKind(7));
  case WeightFamily::truncated_normal:
    return shared ? std::nullopt : std::optional<CovKind>(CovKind(8));
  }
  return std::nullopt;
}

/// The generating model of each covariance definition.
inline WeightModel model_for_kind(CovKind kind) {
  switch (kind.k()) {
  case 1: return {WeightFamily::point_mass_zero, Scenario::independent};
  case 2: return {WeightFamily::discrete_uniform_pm1, Scenario::shared};
  case 3: return {WeightFamily::continuous_uniform, Scenario::shared};
  case 4: return {WeightFamily::discrete_uniform_pm1, Scenario::independent};
  case 5: return {WeightFamily::continuous_uniform, Scenario::independent};
  case 6: return {WeightFamily::inverse_triangular, Scenario::independent};
  case 7: return {WeightFamily::triangular, Scenario::independent};
  default: return {WeightFamily::truncated_normal, Scenario::independent};
  }
}

/// One draw of U.
inline double sample_weight(WeightFamily f, RandomStream& rng) {
  switch (f) {
  case WeightFamily::point_mass_zero: return 0.0;
  case WeightFamily::discrete_uniform_pm1:
    return (rng() >> 63) ? 1.0 : -1.0;
  case WeightFamily::continuous_uniform: return 2.0 * rng.uniform() - 1.0;
  case WeightFamily::triangular: return rng.uniform() - rng.uniform();
  case WeightFamily::inverse_triangular: {
    // Inverse CDF of the density |u| on [-1, 1].
    const double v = 2.0 * rng.uniform() - 1.0;
    return std::copysign(std::sqrt(std::fabs(v)), v);
  }
  case WeightFamily::truncated_normal:
    for (;;) {
      const double z = rng.normal() / 3.0;
      if (std::fabs(z) <= 1.0) return z;
    }
  }
  return 0.0;
}

inline double sample_weight(const WeightModel& m, RandomStream& rng) {
  return sample_weight(m.family, rng);
}

/// P(U <= u) for the continuous families. Throws InputError for the discrete
/// families.
inline double weight_cdf(WeightFamily f, double u) {
  if (!is_continuous(f)) {
    detail::fail_input("distribution function requested for discrete family " +
                       std::string(family_name(f)));
  }
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  switch (f) {
  case WeightFamily::continuous_uniform: return 0.5 * (u + 1.0);
  case WeightFamily::triangular:
    return u <= 0.0 ? 0.5 * (1.0 + u) * (1.0 + u)
                    : 1.0 - 0.5 * (1.0 - u) * (1.0 - u);
  case WeightFamily::inverse_triangular:
    return u <= 0.0 ? 0.5 * (1.0 - u * u) : 0.5 * (1.0 + u * u);
  case WeightFamily::truncated_normal: {
    const double lo = normal_cdf(-3.0);
    return (normal_cdf(3.0 * u) - lo) / (normal_cdf(3.0) - lo);
  }
  default: return 0.0;
  }
}

} // namespace symcov

#endif // SYMCOV_WEIGHTS_HPP
