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
#ifndef SYMCOV_POPULATION_HPP
#define SYMCOV_POPULATION_HPP

#include "symcov/cov_kind.hpp"
#include "symcov/error.hpp"
#include "symcov/matrix.hpp"
#include "symcov/sample_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace symcov {

/// First and second moments of the center vector C and range vector R of a
/// p-variate interval-valued random vector.
///
/// cross_cr[i][j] = Cov(C_i, R_j) is only used when simulating; no symbolic
/// covariance depends on it, so any association between centers and ranges
/// is invisible to every definition.
struct PopulationParams {
  Vector mu_c;
  SymmetricMatrix sigma_cc;
  Vector mu_r;
  SymmetricMatrix sigma_rr;
  std::optional<std::vector<std::vector<double>>> cross_cr;

  std::size_t p() const noexcept { return mu_c.size(); }
};

/// Throws InputError on inconsistent dimensions, non-finite values, or a
/// Sigma_CC / Sigma_RR that is not PSD to -1e-10 * trace.
inline void validate_params(const PopulationParams& params) {
  const std::size_t p = params.mu_c.size();
  if (p == 0) detail::fail_input("params: empty mu_c");
  if (params.mu_r.size() != p || params.sigma_cc.dim() != p ||
      params.sigma_rr.dim() != p) {
    detail::fail_input("params: mu_c, sigma_cc, mu_r and sigma_rr must share "
                       "dimension " + std::to_string(p));
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (!std::isfinite(params.mu_c[j]) || !std::isfinite(params.mu_r[j])) {
      detail::fail_input("params: non-finite mean");
    }
  }
  if (!is_psd(params.sigma_cc)) {
    detail::fail_input("params: sigma_cc is not positive semidefinite");
  }
  if (!is_psd(params.sigma_rr)) {
    detail::fail_input("params: sigma_rr is not positive semidefinite");
  }
  if (params.cross_cr) {
    const auto& x = *params.cross_cr;
    if (x.size() != p) detail::fail_input("params: cross_cr must be p x p");
    for (const auto& row : x) {
      if (row.size() != p) detail::fail_input("params: cross_cr must be p x p");
      for (double v : row) {
        if (!std::isfinite(v)) detail::fail_input("params: non-finite cross_cr");
      }
    }
  }
}

/// E(R_j R_l) = Cov(R_j, R_l) + mu_j mu_l.
inline double expected_rr_entry(const PopulationParams& params, std::size_t j,
                                std::size_t l) {
  return params.sigma_rr(j, l) + params.mu_r[j] * params.mu_r[l];
}

inline SymmetricMatrix expected_rr(const PopulationParams& params) {
  const std::size_t p = params.p();
  SymmetricMatrix e(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      e.set(j, l, expected_rr_entry(params, j, l));
    }
  }
  return e;
}

/// Cov_k(X_j, X_l) = Cov(C_j, C_l) + w E(R_j R_l), w = delta_k on the
/// diagonal and gamma_k off it.
inline double pairwise_cov(const PopulationParams& params, std::size_t j,
                           std::size_t l, CovKind kind) {
  if (j >= params.p() || l >= params.p()) {
    detail::fail_input("variable index out of range");
  }
  return params.sigma_cc(j, l) +
         kind.weight(j == l) * expected_rr_entry(params, j, l);
}

inline SymmetricMatrix population_cov_matrix(const PopulationParams& params,
                                             CovKind kind) {
  const std::size_t p = params.p();
  SymmetricMatrix s(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      s.set(j, l, pairwise_cov(params, j, l, kind));
    }
  }
  return s;
}

inline std::vector<std::string> default_variable_names(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < p; ++j) names.push_back("X" + std::to_string(j + 1));
  return names;
}

inline SymmetricMatrix population_cor_matrix(const PopulationParams& params,
                                             CovKind kind) {
  return correlation_from_covariance(population_cov_matrix(params, kind),
                                     default_variable_names(params.p()));
}

/// Cor_k(X_j, X_l); bit-identical to population_cor_matrix(params, kind)(j, l).
inline double pairwise_cor(const PopulationParams& params, std::size_t j,
                           std::size_t l, CovKind kind) {
  const double vj = pairwise_cov(params, j, j, kind);
  const double vl = pairwise_cov(params, l, l, kind);
  if (!(vj > 0.0) || !(vl > 0.0)) {
    detail::fail_input("zero variance: correlation undefined");
  }
  return std::clamp(pairwise_cov(params, j, l, kind) / std::sqrt(vj * vl), -1.0,
                    1.0);
}

/// Cor_k(X_j, X_j) with the variable taken as two distinct arguments.
inline double population_self_correlation(const PopulationParams& params,
                                          std::size_t j, CovKind kind) {
  const double var = pairwise_cov(params, j, j, kind);
  if (!(var > 0.0)) detail::fail_input("zero variance: correlation undefined");
  return (params.sigma_cc(j, j) +
          kind.gamma() * expected_rr_entry(params, j, j)) / var;
}

/// Parameters of Y = W X under interval algebra, for a q x p weight matrix W:
/// centers map by W, ranges by |W| (entrywise absolute value).
inline PopulationParams
lincomb_params(const PopulationParams& params,
               const std::vector<std::vector<double>>& weights) {
  const std::size_t p = params.p();
  const std::size_t q = weights.size();
  for (const auto& row : weights) {
    if (row.size() != p) detail::fail_input("lincomb weights must have p columns");
  }
  auto transform_mean = [&](const Vector& mu, bool absolute) {
    Vector out(q, 0.0);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t j = 0; j < p; ++j) {
        const double w = absolute ? std::fabs(weights[a][j]) : weights[a][j];
        out[a] += w * mu[j];
      }
    }
    return out;
  };
  auto transform_cov = [&](const SymmetricMatrix& s, bool absolute) {
    SymmetricMatrix out(q);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        double acc = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          for (std::size_t l = 0; l < p; ++l) {
            const double wa = absolute ? std::fabs(weights[a][j]) : weights[a][j];
            const double wb = absolute ? std::fabs(weights[b][l]) : weights[b][l];
            acc += wa * s(j, l) * wb;
          }
        }
        out.set(a, b, acc);
      }
    }
    return out;
  };
  PopulationParams out;
  out.mu_c = transform_mean(params.mu_c, false);
  out.sigma_cc = transform_cov(params.sigma_cc, false);
  out.mu_r = transform_mean(params.mu_r, true);
  out.sigma_rr = transform_cov(params.sigma_rr, true);
  if (params.cross_cr) {
    const auto& x = *params.cross_cr;
    std::vector<std::vector<double>> y(q, std::vector<double>(q, 0.0));
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        for (std::size_t j = 0; j < p; ++j) {
          for (std::size_t l = 0; l < p; ++l) {
            y[a][b] += weights[a][j] * x[j][l] * std::fabs(weights[b][l]);
          }
        }
      }
    }
    out.cross_cr = std::move(y);
  }
  return out;
}

} // namespace symcov

#endif // SYMCOV_POPULATION_HPP
