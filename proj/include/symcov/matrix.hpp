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
#ifndef SYMCOV_MATRIX_HPP
#define SYMCOV_MATRIX_HPP

#include "symcov/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace symcov {

using Vector = std::vector<double>;

/// Dense p x p symmetric matrix, stored as its lower triangle so that
/// symmetry holds exactly.
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim)
      : dim_(dim), data_(dim * (dim + 1) / 2, 0.0) {}

  /// Build from full rows. Throws InputError on a non-square, non-finite or
  /// asymmetric input (asymmetry beyond 1e-12 relative).
  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   const std::string& what = "matrix") {
    const std::size_t p = rows.size();
    SymmetricMatrix m(p);
    for (std::size_t i = 0; i < p; ++i) {
      if (rows[i].size() != p) detail::fail_input(what + " is not square");
      for (std::size_t j = 0; j < p; ++j) {
        if (!std::isfinite(rows[i][j])) {
          detail::fail_input(what + " has a non-finite entry");
        }
      }
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double a = rows[i][j];
        const double b = rows[j][i];
        const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
        if (std::fabs(a - b) > 1e-12 * scale) {
          detail::fail_input(what + " is not symmetric at (" +
                             std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
        }
        m.set(i, j, a);
      }
    }
    return m;
  }

  static SymmetricMatrix diagonal(const Vector& d) {
    SymmetricMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[index(i, j)];
  }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    data_[index(i, j)] = v;
  }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(dim_, std::vector<double>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) out[i][j] = (*this)(i, j);
    }
    return out;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        m(Eigen::Index(i), Eigen::Index(j)) = (*this)(i, j);
      }
    }
    return m;
  }

  friend bool operator==(const SymmetricMatrix&,
                         const SymmetricMatrix&) = default;

private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t dim_ = 0;
  std::vector<double> data_;
};

inline double min_eigenvalue(const SymmetricMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.to_eigen(),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Positive semidefinite up to a floating-point allowance: the smallest
/// eigenvalue is at least -rel_tol * max(trace, 1e-300).
inline bool is_psd(const SymmetricMatrix& m, double rel_tol = 1e-10) {
  const double tr = std::max(std::fabs(m.trace()), 1e-300);
  return min_eigenvalue(m) >= -rel_tol * tr;
}

} // namespace symcov

#endif // SYMCOV_MATRIX_HPP
