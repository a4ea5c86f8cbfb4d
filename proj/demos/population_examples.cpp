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
// Population covariance and correlation matrices for two small parameter
// sets, one line per definition.
#include "symcov/symcov.hpp"

#include <cstdio>

using namespace symcov;

namespace {

void show(const char* title, const PopulationParams& prm) {
  std::printf("%s\n", title);
  for (CovKind k : CovKind::all()) {
    const auto s = population_cov_matrix(prm, k);
    std::printf("  k=%d  cov [[%.4f, %.4f], [%.4f, %.4f]]  cor %.4f\n", k.k(), s(0, 0), s(0, 1),
                s(1, 0), s(1, 1), pairwise_cor(prm, 0, 1, k));
  }
}

} // namespace

int main() {
  const PopulationParams independent_ranges{
      {0, 0}, SymmetricMatrix::from_rows({{1, 0}, {0, 0.5}}), {1.5, 1.5},
      SymmetricMatrix::from_rows({{0.64, 0}, {0, 0.04}}), {}};
  const PopulationParams correlated_ranges{
      {0, 0}, SymmetricMatrix::from_rows({{1, 0}, {0, 0.5}}), {1.3, 1.3},
      SymmetricMatrix::from_rows({{0.16, 0.07}, {0.07, 0.04}}), {}};
  show("uncorrelated centers, uncorrelated ranges", independent_ranges);
  show("uncorrelated centers, correlated ranges", correlated_ranges);

  // Interval algebra on the parameters: Y = X1 - X2 keeps the range sum.
  const auto diff = lincomb_params(independent_ranges, {{1, -1}});
  std::printf("Y = X1 - X2: E(C) = %.3f, E(R) = %.3f, Var_2(Y) = %.4f\n", diff.mu_c[0],
              diff.mu_r[0], pairwise_cov(diff, 0, 0, CovKind(2)));
}
