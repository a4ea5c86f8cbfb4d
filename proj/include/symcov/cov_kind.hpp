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
#ifndef SYMCOV_COV_KIND_HPP
#define SYMCOV_COV_KIND_HPP

#include "symcov/error.hpp"
#include "symcov/normal.hpp"

#include <array>
#include <string>

namespace symcov {

/// Weight on the range second moment in definition 8: the variance of a
/// N(0, 1/9) variable truncated to [-1, 1], divided by four.
inline double delta8() noexcept {
  return truncated_normal_variance(1.0 / 3.0, 3.0) / 4.0;
}

/// One of the eight symbolic covariance definitions.
///
/// Every definition has the form
///   Cov_k(X_j, X_l) = Cov(C_j, C_l) + w * E(R_j R_l),
/// with w = delta on the diagonal and w = gamma off the diagonal.
///
///   k  delta   gamma   micro-data weights
///   1  0       0       U = 0
///   2  1/4     1/4     shared U ~ Unif{-1, 1}
///   3  1/12    1/12    shared U with Var(U) = 1/3
///   4  1/4     0       independent U_j ~ Unif{-1, 1}
///   5  1/12    0       independent U_j with Var(U_j) = 1/3
///   6  1/8     0       independent inverse-triangular U_j
///   7  1/24    0       independent triangular U_j
///   8  delta8  0       independent truncated-normal U_j
class CovKind {
public:
  /// Throws InputError unless 1 <= k <= 8.
  explicit CovKind(int k) : k_(k) {
    if (k < 1 || k > 8) {
      detail::fail_input("covariance definition must be in 1..8, got " +
                         std::to_string(k));
    }
  }

  int k() const noexcept { return k_; }

  double delta() const noexcept {
    switch (k_) {
    case 1: return 0.0;
    case 2: return 1.0 / 4.0;
    case 3: return 1.0 / 12.0;
    case 4: return 1.0 / 4.0;
    case 5: return 1.0 / 12.0;
    case 6: return 1.0 / 8.0;
    case 7: return 1.0 / 24.0;
    default: return delta8();
    }
  }

  double gamma() const noexcept {
    return (k_ == 2 || k_ == 3) ? delta() : 0.0;
  }

  /// Range weight for entry (j, l).
  double weight(bool diagonal) const noexcept {
    return diagonal ? delta() : gamma();
  }

  /// True for k = 1, 2, 3, where the variance is the covariance of a variable
  /// with itself.
  bool coherent() const noexcept { return delta() == gamma(); }

  static std::array<CovKind, 8> all() {
    return {CovKind(1), CovKind(2), CovKind(3), CovKind(4),
            CovKind(5), CovKind(6), CovKind(7), CovKind(8)};
  }

  friend bool operator==(const CovKind&, const CovKind&) = default;

private:
  int k_;
};

} // namespace symcov

#endif // SYMCOV_COV_KIND_HPP
