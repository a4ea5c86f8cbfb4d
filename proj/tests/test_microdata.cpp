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
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace symcov;
using Catch::Approx;

namespace {

PopulationParams params(Vector mu_c, std::vector<std::vector<double>> cc,
                        Vector mu_r, std::vector<std::vector<double>> rr) {
  return {std::move(mu_c), SymmetricMatrix::from_rows(cc), std::move(mu_r),
          SymmetricMatrix::from_rows(rr), {}};
}

PopulationParams indep_ranges() {
  return params({0, 0}, {{1, 0}, {0, 0.5}}, {1.5, 1.5}, {{0.64, 0}, {0, 0.04}});
}

PopulationParams wide() {
  return params({10, 20}, {{4, 1}, {1, 2}}, {3, 2}, {{0.25, 0}, {0, 0.09}});
}

double column_cov(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / double(x.size());
}

} // namespace

TEST_CASE("simulate_macrodata reproduces the center covariance") {
  const auto sim = simulate_macrodata(indep_ranges(), 100000, RngSeed{61});
  REQUIRE(sim.data.n() == 100000);
  const auto c0 = sim.data.centers(0), c1 = sim.data.centers(1);
  CHECK(column_cov(c0, c0) == Approx(1.0).epsilon(0.02));
  CHECK(column_cov(c1, c1) == Approx(0.5).epsilon(0.02));
  CHECK(std::fabs(column_cov(c0, c1)) < 0.02);
  CHECK(sim.rejection_rate > 0.0);
  CHECK(sim.rejection_rate < 0.05);
  for (const Interval& x : sim.data.cells()) REQUIRE(x.range() >= 0.0);
}

TEST_CASE("fixed ranges when sigma_rr is zero") {
  const auto p = params({0, 5}, {{1, 0.2}, {0.2, 1}}, {1, 1}, {{0, 0}, {0, 0}});
  const auto sim = simulate_macrodata(p, 500, RngSeed{62});
  for (const Interval& x : sim.data.cells()) REQUIRE(x.range() == Approx(1.0).margin(1e-12));
  CHECK(sim.rejected == 0);
}

TEST_CASE("cross_cr reaches the sampler") {
  auto p = wide();
  p.cross_cr = std::vector<std::vector<double>>{{0.4, 0}, {0, 0.2}};
  const auto sim = simulate_macrodata(p, 20000, RngSeed{63});
  const auto c = sim.data.centers(0), r = sim.data.ranges(0);
  CHECK(column_cov(c, r) > 0.3);
  auto bad = wide();
  bad.cross_cr = std::vector<std::vector<double>>{{5, 0}, {0, 0}};
  CHECK_THROWS_AS(simulate_macrodata(bad, 10, RngSeed{1}), InputError);
}

TEST_CASE("frequent negative ranges are infeasible") {
  const auto p = params({0}, {{1}}, {-1}, {{1}});
  CHECK_THROWS_AS(simulate_macrodata(p, 100, RngSeed{64}), InfeasibleError);
  CHECK(negative_range_probability(p) == Approx(normal_cdf(1)).epsilon(1e-12));
  CHECK_THROWS_AS(simulate_macrodata(indep_ranges(), 0, RngSeed{64}), InputError);
}

TEST_CASE("simulation is deterministic and thread independent") {
  setenv("SYMCOV_THREADS", "1", 1);
  const auto a = simulate_macrodata(wide(), 300, RngSeed{65});
  const auto ma = simulate_microdata(a.data, {WeightFamily::triangular, Scenario::independent}, 5, RngSeed{65});
  setenv("SYMCOV_THREADS", "3", 1);
  const auto b = simulate_macrodata(wide(), 300, RngSeed{65});
  const auto mb = simulate_microdata(b.data, {WeightFamily::triangular, Scenario::independent}, 5, RngSeed{65});
  unsetenv("SYMCOV_THREADS");
  REQUIRE(a.data.n() == b.data.n());
  for (std::size_t k = 0; k < a.data.cells().size(); ++k) {
    REQUIRE(a.data.cells()[k] == b.data.cells()[k]);
  }
  CHECK(std::equal(ma.table.values().begin(), ma.table.values().end(), mb.table.values().begin()));
  const auto c = simulate_macrodata(wide(), 300, RngSeed{66});
  CHECK_FALSE(c.data.cells()[0] == a.data.cells()[0]);
}

TEST_CASE("point mass puts every micro point at the center") {
  const auto macro = simulate_macrodata(wide(), 50, RngSeed{67}).data;
  const auto sim = simulate_microdata(macro, {WeightFamily::point_mass_zero, Scenario::independent}, 4, RngSeed{67});
  for (std::size_t r = 0; r < sim.table.m(); ++r) {
    for (std::size_t j = 0; j < 2; ++j) REQUIRE(sim.table.at(r, j) == macro.at(r / 4, j).center());
  }
}

TEST_CASE("discrete weights hit rectangle vertices") {
  const auto macro = test::from_limits(1, 2, {{0, 2}, {10, 14}});
  const auto shared = simulate_microdata(macro, {WeightFamily::discrete_uniform_pm1, Scenario::shared}, 1000, RngSeed{68});
  for (std::size_t r = 0; r < shared.table.m(); ++r) {
    const auto row = shared.table.row(r);
    const bool low = row[0] == 0 && row[1] == 10;
    const bool high = row[0] == 2 && row[1] == 14;
    REQUIRE((low || high));
  }
  const auto indep = simulate_microdata(macro, {WeightFamily::discrete_uniform_pm1, Scenario::independent}, 10000, RngSeed{69});
  std::map<std::pair<double, double>, int> counts;
  for (std::size_t r = 0; r < indep.table.m(); ++r) {
    counts[{indep.table.at(r, 0), indep.table.at(r, 1)}]++;
  }
  REQUIRE(counts.size() == 4);
  for (const auto& [vertex, count] : counts) CHECK(count / 10000.0 == Approx(0.25).margin(0.02));
}

TEST_CASE("simulated micro data stays inside its rectangles") {
  auto rng = test::stream(70);
  for (int trial = 0; trial < 50; ++trial) {
    const auto macro = test::random_dataset(rng, 20, 3, 0.2);
    for (WeightFamily f : kAllWeightFamilies) {
      for (Scenario s : {Scenario::independent, Scenario::shared}) {
        const auto sim = simulate_microdata(macro, {f, s}, 3, RngSeed{std::uint64_t(trial)});
        for (std::size_t r = 0; r < sim.table.m(); ++r) {
          for (std::size_t j = 0; j < 3; ++j) REQUIRE(macro.at(r / 3, j).contains(sim.table.at(r, j)));
        }
      }
    }
  }
}

TEST_CASE("recover_weights examples") {
  const auto macro = test::from_limits(1, 1, {{2, 6}});
  const MicroTable micro({"o1", "o1", "o1", "o1"}, {"X1"}, {4, 6, 2, 5});
  const auto u = recover_weights(micro, macro, false);
  CHECK(*u.at(0, 0) == 0.0);
  CHECK(*u.at(1, 0) == 1.0);
  CHECK(*u.at(2, 0) == -1.0);
  CHECK(*u.at(3, 0) == 0.5);
  const auto e = recover_weights(micro, macro, true);
  CHECK(e.at(0, 0).has_value());
  CHECK_FALSE(e.at(1, 0).has_value());
  CHECK_FALSE(e.at(2, 0).has_value());
  CHECK(e.present_count() == 2);
}

TEST_CASE("recover_weights errors and missing cells") {
  const auto macro = test::from_limits(1, 2, {{2, 6}, {3, 3}});
  CHECK_THROWS_AS(recover_weights(MicroTable({"zz"}, {"X1", "X2"}, {4, 3}), macro, false), InputError);
  CHECK_THROWS_AS(recover_weights(MicroTable({"o1"}, {"X1", "X2"}, {6.1, 3}), macro, false), InputError);
  CHECK_THROWS_AS(recover_weights(MicroTable({"o1"}, {"A", "B"}, {4, 3}), macro, false), InputError);
  const auto u = recover_weights(MicroTable({"o1"}, {"X1", "X2"}, {6 + 1e-12, 3}), macro, false);
  CHECK(*u.at(0, 0) == 1.0);
  CHECK_FALSE(u.at(0, 1).has_value());
}

TEST_CASE("recovered weights round trip") {
  auto rng = test::stream(71);
  const auto macro = test::random_dataset(rng, 30, 3);
  for (WeightFamily f : kAllWeightFamilies) {
    const auto sim = simulate_microdata(macro, {f, Scenario::independent}, 20, RngSeed{71});
    const auto u = recover_weights(sim.table, macro, false);
    for (std::size_t r = 0; r < u.m(); ++r) {
      for (std::size_t j = 0; j < 3; ++j) {
        REQUIRE(u.at(r, j).has_value());
        REQUIRE(std::fabs(*u.at(r, j) - sim.weights[r * 3 + j]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("scenario discrimination and weight moments") {
  const auto macro = simulate_macrodata(wide(), 200, RngSeed{72}).data;
  const auto shared = simulate_microdata(macro, {WeightFamily::continuous_uniform, Scenario::shared}, 50, RngSeed{72});
  const auto us = recover_weights(shared.table, macro, false);
  for (std::size_t r = 0; r < us.m(); ++r) REQUIRE(std::fabs(*us.at(r, 0) - *us.at(r, 1)) <= 1e-9);
  CHECK(weight_correlations(us)[0][1] > 0.999);

  for (WeightFamily f : {WeightFamily::continuous_uniform, WeightFamily::triangular,
                         WeightFamily::inverse_triangular, WeightFamily::truncated_normal}) {
    INFO(family_name(f));
    const auto indep = simulate_microdata(macro, {f, Scenario::independent}, 50, RngSeed{73});
    const auto u = recover_weights(indep.table, macro, false);
    CHECK(std::fabs(weight_correlations(u)[0][1]) <= 0.03);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto col = u.column(j);
      REQUIRE(col.size() == 10000);
      double m = 0, v = 0;
      for (double x : col) m += x;
      m /= double(col.size());
      for (double x : col) v += (x - m) * (x - m);
      v /= double(col.size());
      CHECK(std::fabs(m) <= 0.02);
      CHECK(v == Approx(model_variance(f)).epsilon(0.05));
    }
  }
}

TEST_CASE("simulated macro data recovers every population matrix") {
  const auto prm = wide();
  const auto sim = simulate_macrodata(prm, 10000, RngSeed{21});
  for (CovKind k : CovKind::all()) {
    INFO("k = " << k.k());
    const auto s = sample_cov_matrix(sim.data, k);
    const auto want = population_cov_matrix(prm, k);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t l = 0; l <= j; ++l) {
        const double scale = std::sqrt(want(j, j) * want(l, l));
        CHECK(std::fabs(s(j, l) - want(j, l)) <= 0.05 * scale);
      }
    }
  }
}
