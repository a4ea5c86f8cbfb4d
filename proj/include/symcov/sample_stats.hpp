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
#ifndef SYMCOV_SAMPLE_STATS_HPP
#define SYMCOV_SAMPLE_STATS_HPP

#include "symcov/cov_kind.hpp"
#include "symcov/dataset.hpp"
#include "symcov/error.hpp"
#include "symcov/matrix.hpp"
#include "symcov/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

// Sample symbolic statistics of interval-valued data.
//
// All second moments use the divisor 1/n, not 1/(n-1): the symbolic variance
// and covariance estimators are defined that way and the population
// quantities are their almost-sure limits.
//
// Definitions 6, 7 and 8 are only defined for populations; here they are
// extended to samples in the same form as 4 and 5 (centers covariance plus
// delta_k times the diagonal of the range second-moment matrix).

namespace symcov {

namespace detail {

inline void check_column(const IntervalDataset& d, std::size_t j) {
  if (j >= d.p()) {
    fail_input("column index " + std::to_string(j) + " out of range (p = " +
               std::to_string(d.p()) + ")");
  }
}

inline double column_center_mean(const IntervalDataset& d, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.n(); ++i) s += d.at(i, j).center();
  return s / static_cast<double>(d.n());
}

} // namespace detail

/// Mean of the interval centers, per variable.
inline Vector sample_mean(const IntervalDataset& d) {
  Vector out(d.p());
  for (std::size_t j = 0; j < d.p(); ++j) {
    out[j] = detail::column_center_mean(d, j);
  }
  return out;
}

/// (1/n) sum (c_ij - cbar_j)(c_il - cbar_l), two-pass.
inline double center_covariance(const IntervalDataset& d, std::size_t j,
                                std::size_t l) {
  detail::check_column(d, j);
  detail::check_column(d, l);
  const double mj = detail::column_center_mean(d, j);
  const double ml = detail::column_center_mean(d, l);
  double s = 0.0;
  for (std::size_t i = 0; i < d.n(); ++i) {
    s += (d.at(i, j).center() - mj) * (d.at(i, l).center() - ml);
  }
  return s / static_cast<double>(d.n());
}

/// (1/n) sum r_ij r_il, the raw second moment of the ranges.
inline double range_moment(const IntervalDataset& d, std::size_t j,
                           std::size_t l) {
  detail::check_column(d, j);
  detail::check_column(d, l);
  double s = 0.0;
  for (std::size_t i = 0; i < d.n(); ++i) {
    s += d.at(i, j).range() * d.at(i, l).range();
  }
  return s / static_cast<double>(d.n());
}

/// Entry (j, l) of the k-th sample symbolic covariance matrix:
/// center covariance plus delta_k (j == l) or gamma_k (j != l) times the
/// range moment.
inline double sample_cov_pair(const IntervalDataset& d, std::size_t j,
                              std::size_t l, CovKind kind) {
  const double w = kind.weight(j == l);
  const double cc = center_covariance(d, j, l);
  return w == 0.0 ? cc : cc + w * range_moment(d, j, l);
}

/// The raw limits-form estimators for definitions 1-3, evaluated exactly as
/// the original (a, b) formulas read, with no center/range rewriting. Used
/// as an independent check of sample_cov_pair.
inline double limits_form_oracle(const IntervalDataset& d, std::size_t j,
                                 std::size_t l, int defn) {
  detail::check_column(d, j);
  detail::check_column(d, l);
  if (defn < 1 || defn > 3) {
    detail::fail_input("limits-form oracle covers definitions 1-3 only");
  }
  const std::size_t n = d.n();
  const double nn = static_cast<double>(n);
  auto mean_of = [&](std::size_t col) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += (d.at(i, col).lower() + d.at(i, col).upper()) / 2.0;
    }
    return s / nn;
  };
  const double xj = mean_of(j);
  const double xl = mean_of(l);
  double s = 0.0;
  if (j == l) {
    switch (defn) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) {
        const double a = d.at(i, j).lower(), b = d.at(i, j).upper();
        const double t = (a + b) / 2.0 - xj;
        s += t * t;
      }
      return s / nn;
    case 2:
      for (std::size_t i = 0; i < n; ++i) {
        const double a = d.at(i, j).lower(), b = d.at(i, j).upper();
        s += ((a - xj) * (a - xj) + (b - xj) * (b - xj)) / (2.0 * nn);
      }
      return s;
    default: {
      double half_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = d.at(i, j).lower(), b = d.at(i, j).upper();
        s += (b * b + b * a + a * a) / (3.0 * nn);
        half_sum += (b + a) / (2.0 * nn);
      }
      return s - half_sum * half_sum;
    }
    }
  }
  switch (defn) {
  case 1:
    for (std::size_t i = 0; i < n; ++i) {
      const double aj = d.at(i, j).lower(), bj = d.at(i, j).upper();
      const double al = d.at(i, l).lower(), bl = d.at(i, l).upper();
      s += (bj + aj) * (bl + al) / (4.0 * nn);
    }
    return s - xj * xl;
  case 2:
    for (std::size_t i = 0; i < n; ++i) {
      const double aj = d.at(i, j).lower(), bj = d.at(i, j).upper();
      const double al = d.at(i, l).lower(), bl = d.at(i, l).upper();
      s += ((aj - xj) * (al - xl) + (bj - xj) * (bl - xl)) / (2.0 * nn);
    }
    return s;
  default:
    for (std::size_t i = 0; i < n; ++i) {
      const double aj = d.at(i, j).lower(), bj = d.at(i, j).upper();
      const double al = d.at(i, l).lower(), bl = d.at(i, l).upper();
      s += (aj - xj) * (bl - xl) + (bj - xj) * (al - xl) +
           2.0 * (aj - xj) * (al - xl) + 2.0 * (bj - xj) * (bl - xl);
    }
    return s / (6.0 * nn);
  }
}

/// The k-th sample symbolic covariance matrix. Entries are computed
/// independently with a fixed summation order, so the result does not depend
/// on SYMCOV_THREADS.
inline SymmetricMatrix sample_cov_matrix(const IntervalDataset& d,
                                         CovKind kind) {
  const std::size_t p = d.p();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l <= j; ++l) pairs.emplace_back(j, l);
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t t) {
    values[t] = sample_cov_pair(d, pairs[t].first, pairs[t].second, kind);
  });
  SymmetricMatrix s(p);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    s.set(pairs[t].first, pairs[t].second, values[t]);
  }
  return s;
}

/// Scale a covariance matrix to a correlation matrix, U^-1 S U^-1 with
/// U = diag(sqrt(s_jj)). Throws InputError naming the first variable with a
/// non-positive diagonal entry.
inline SymmetricMatrix
correlation_from_covariance(const SymmetricMatrix& s,
                            const std::vector<std::string>& names) {
  const std::size_t p = s.dim();
  for (std::size_t j = 0; j < p; ++j) {
    if (!(s(j, j) > 0.0)) {
      const std::string name =
          j < names.size() ? names[j] : std::to_string(j + 1);
      detail::fail_input("zero variance in column \"" + name +
                         "\": correlation undefined");
    }
  }
  SymmetricMatrix r(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      const double v = s(j, l) / std::sqrt(s(j, j) * s(l, l));
      r.set(j, l, std::clamp(v, -1.0, 1.0));
    }
  }
  return r;
}

/// The k-th sample symbolic correlation matrix. Its diagonal is 1 for every
/// k, since each variance is scaled by itself.
inline SymmetricMatrix sample_cor_matrix(const IntervalDataset& d,
                                         CovKind kind) {
  return correlation_from_covariance(sample_cov_matrix(d, kind),
                                     d.variable_names());
}

/// Cor_k(X_j, X_j) when X_j is treated as two distinct arguments: the
/// off-diagonal covariance rule applied to a variable and itself, over its
/// variance. Equals 1 for k = 1, 2, 3; below 1 for k >= 4 unless every range
/// in the column is zero.
inline double sample_self_correlation(const IntervalDataset& d, std::size_t j,
                                      CovKind kind) {
  const double cc = center_covariance(d, j, j);
  const double m2 = range_moment(d, j, j);
  const double var = cc + kind.delta() * m2;
  if (!(var > 0.0)) {
    detail::fail_input("zero variance in column \"" + d.variable_names()[j] +
                       "\": correlation undefined");
  }
  return (cc + kind.gamma() * m2) / var;
}

} // namespace symcov

#endif // SYMCOV_SAMPLE_STATS_HPP
