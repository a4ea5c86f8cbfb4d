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
// Acceptance checks. Prints one PASS/FAIL line per criterion with its runtime
// and a short measurement summary; exits nonzero if any criterion fails.
#include "symcov/symcov.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace symcov;
namespace fs = std::filesystem;

namespace {

const std::string kCli = SYMCOV_CLI;
const std::string kData = SYMCOV_DATA_DIR;
const fs::path kWork = SYMCOV_WORK_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Runs a shell command, returning its exit status.
int run(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string shell_quote(const fs::path& p) { return "'" + p.string() + "'"; }

using Matrix = std::vector<std::vector<double>>;

/// Covariance and correlation matrices keyed by k, from population-cov JSON.
struct CliMatrices {
  std::map<int, Matrix> cov, cor;
};

std::optional<CliMatrices> population_cov_cli(const std::string& params, const std::string& ks) {
  const fs::path out = kWork / ("pop_" + fs::path(params).stem().string() + ".json");
  const std::string cmd = shell_quote(kCli) + " population-cov " + shell_quote(kData + "/" + params) +
                          " --k " + ks + " --format json -o " + shell_quote(out);
  if (run(cmd) != 0) return std::nullopt;
  const auto j = nlohmann::json::parse(slurp(out));
  CliMatrices m;
  for (const auto& e : j.at("covariance")) m.cov[e.at("kind")] = e.at("matrix").get<Matrix>();
  if (j.contains("correlation")) {
    for (const auto& e : j.at("correlation")) m.cor[e.at("kind")] = e.at("matrix").get<Matrix>();
  }
  return m;
}

/// Largest absolute entrywise difference.
double max_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  if (a.size() != b.size()) return INFINITY;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return INFINITY;
    for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::fabs(a[i][j] - b[i][j]));
  }
  return d;
}

Outcome criterion1() {
  Outcome o;
  double worst = 0.0;
  int checks = 0;
  auto expect = [&](const std::optional<CliMatrices>& m, int k, const Matrix& want, double tol,
                    const char* what) {
    ++checks;
    if (!m || !m->cov.count(k)) {
      o.pass = false;
      o.detail += std::string(" missing:") + what;
      return;
    }
    const double d = max_diff(m->cov.at(k), want);
    worst = std::max(worst, d);
    if (!(d <= tol)) {
      o.pass = false;
      o.detail += std::string(" ") + what + fmt(" off by %.4g", d);
    }
  };
  auto expect_cor = [&](const std::optional<CliMatrices>& m, int k, double want, const char* what) {
    ++checks;
    if (!m || !m->cor.count(k)) {
      o.pass = false;
      o.detail += std::string(" missing:") + what;
      return;
    }
    const double d = std::fabs(m->cor.at(k)[0][1] - want);
    if (!(d <= 0.002)) {
      o.pass = false;
      o.detail += std::string(" ") + what + fmt(" off by %.4g", d);
    }
  };

  const auto a = population_cov_cli("indep_ranges.json", "2,3,4,5");
  expect(a, 2, {{1.723, 0.562}, {0.562, 1.073}}, 1e-3, "indep_ranges/k2");
  expect(a, 3, {{1.241, 0.188}, {0.188, 0.691}}, 1e-3, "indep_ranges/k3");
  expect(a, 4, {{1.723, 0}, {0, 1.073}}, 1e-3, "indep_ranges/k4");
  expect(a, 5, {{1.241, 0}, {0, 0.691}}, 1e-3, "indep_ranges/k5");
  expect_cor(a, 2, 0.414, "indep_ranges/cor2");
  expect_cor(a, 3, 0.203, "indep_ranges/cor3");

  const auto b = population_cov_cli("corr_ranges.json", "2,3,4,5");
  expect(b, 2, {{1.462, 0.440}, {0.440, 0.933}}, 1e-3, "corr_ranges/k2");
  expect(b, 3, {{1.154, 0.147}, {0.147, 0.644}}, 1e-3, "corr_ranges/k3");
  expect(b, 4, {{1.462, 0}, {0, 0.933}}, 1e-3, "corr_ranges/k4");
  expect(b, 5, {{1.154, 0}, {0, 0.644}}, 1e-3, "corr_ranges/k5");
  expect_cor(b, 2, 0.377, "corr_ranges/cor2");
  expect_cor(b, 3, 0.170, "corr_ranges/cor3");

  expect(population_cov_cli("cancel_k1.json", "1"), 1, {{1, 0}, {0, 9}}, 1e-3, "cancel/k1");
  expect(population_cov_cli("cancel_k2.json", "2"), 2, {{3.45, 0}, {0, 11.30}}, 1e-3, "cancel/k2");
  expect(population_cov_cli("cancel_k3.json", "3"), 3, {{1.817, 0}, {0, 9.767}}, 1e-3, "cancel/k3");
  expect(population_cov_cli("cancel_k4.json", "4"), 4, {{3.45, -2.25}, {-2.25, 11.30}}, 1e-3, "cancel/k4");
  const auto e5 = population_cov_cli("cancel_k5.json", "5");
  ++checks;
  if (!e5 || std::fabs(e5->cov.at(5)[0][1] + 0.75) > 0.003) {
    o.pass = false;
    o.detail += " cancel/k5 off-diagonal";
  }
  o.detail = std::to_string(checks) + " matrices/correlations, max matrix error " +
             fmt("%.2e", worst) + o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  RandomStream rng(RngSeed{2024}, {std::uint64_t(StreamPurpose::test_sample), 2});
  double worst = 0.0;
  std::size_t pairs = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 100, p = 1 + rng() % 6;
    std::vector<Interval> cells;
    for (std::size_t c = 0; c < n * p; ++c) {
      const double a = -50 + 100 * rng.uniform();
      const double w = rng.uniform() < 0.1 ? 0.0 : 20 * rng.uniform();
      cells.push_back(interval_from_limits(a, a + w));
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("o" + std::to_string(i));
    const IntervalDataset d(ids, default_variable_names(p), std::move(cells));
    for (int defn = 1; defn <= 3; ++defn) {
      const CovKind k(defn);
      for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t l = 0; l < p; ++l) {
          const double x = limits_form_oracle(d, j, l, defn);
          const double y = sample_cov_pair(d, j, l, k);
          const double scale = std::max({std::fabs(x), std::fabs(y),
                                         std::sqrt(sample_cov_pair(d, j, j, k) *
                                                   sample_cov_pair(d, l, l, k))});
          const double rel = scale == 0.0 ? std::fabs(x - y) : std::fabs(x - y) / scale;
          worst = std::max(worst, rel);
          ++pairs;
        }
      }
    }
  }
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(pairs) + " entries, max relative difference " + fmt("%.2e", worst);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const fs::path log = kWork / "properties.txt";
  const int rc = run(shell_quote(SYMCOV_PROPERTIES) + " --reporter compact > " + shell_quote(log) + " 2>&1");
  o.pass = rc == 0;
  std::string text = slurp(log);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  o.detail = text.substr(text.rfind('\n') + 1);
  return o;
}

Outcome criterion4() {
  Outcome o;
  // The indep_ranges fixture centers and range dispersion with larger mean ranges, so
  // negative-range rejection is negligible.
  const PopulationParams prm{{0, 0}, SymmetricMatrix::from_rows({{1, 0}, {0, 0.5}}), {4, 4},
                             SymmetricMatrix::from_rows({{0.64, 0}, {0, 0.04}}), {}};
  const std::size_t n = 200000;
  double worst_ratio = 0.0;
  for (CovKind k : CovKind::all()) {
    const auto macro = simulate_macrodata(prm, n, RngSeed{4000 + std::uint64_t(k.k())});
    const auto micro = simulate_microdata(macro.data, model_for_kind(k), 1,
                                          RngSeed{5000 + std::uint64_t(k.k())});
    const auto& t = micro.table;
    const double m = static_cast<double>(t.m());
    double mean[2] = {0, 0};
    for (std::size_t r = 0; r < t.m(); ++r) {
      for (std::size_t j = 0; j < 2; ++j) mean[j] += t.at(r, j) / m;
    }
    const auto want = population_cov_matrix(prm, k);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t l = 0; l <= j; ++l) {
        double s = 0.0;
        for (std::size_t r = 0; r < t.m(); ++r) s += (t.at(r, j) - mean[j]) * (t.at(r, l) - mean[l]);
        s /= m;
        const double tol = std::max(0.02 * std::fabs(want(j, l)), 0.02);
        const double err = std::fabs(s - want(j, l));
        worst_ratio = std::max(worst_ratio, err / tol);
        if (err > tol) {
          o.pass = false;
          o.detail += " k" + std::to_string(k.k()) + "(" + std::to_string(j + 1) + "," +
                      std::to_string(l + 1) + ")" + fmt("=%.4f", s) + fmt(" want %.4f", want(j, l));
        }
      }
    }
  }
  o.detail = "k=1..8, n=200000, worst error/tolerance " + fmt("%.3f", worst_ratio) + o.detail;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const PopulationParams prm{{10, 20}, SymmetricMatrix::from_rows({{4, 1}, {1, 2}}), {3, 2},
                             SymmetricMatrix::from_rows({{0.25, 0}, {0, 0.09}}), {}};
  const auto candidates = default_candidates();
  FitOptions opts;
  opts.replicates = 1000;
  const WeightFamily truth[] = {WeightFamily::continuous_uniform, WeightFamily::triangular,
                                WeightFamily::truncated_normal};
  std::string summary;
  for (WeightFamily f : truth) {
    int hits = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = 70000 + 100 * std::uint64_t(f) + std::uint64_t(t);
      // 12 objects x 25 micro rows x 2 variables = 600 recovered weights.
      const auto macro = simulate_macrodata(prm, 12, RngSeed{seed}).data;
      const auto micro = simulate_microdata(macro, {f, Scenario::independent}, 25, RngSeed{seed});
      const auto u = recover_weights(micro.table, macro, false);
      const auto report = select_model(u, candidates, RngSeed{seed}, opts);
      hits += report.recommendation().model.family == f;
    }
    const double need = f == WeightFamily::continuous_uniform ? 0.9 : 0.8;
    const double rate = double(hits) / trials;
    if (rate < need) o.pass = false;
    summary += std::string(family_name(f)) + fmt(" %.0f%%, ", 100 * rate);
  }
  // AD null rejection rate at alpha = 0.05.
  for (WeightFamily f : truth) {
    const std::size_t n = 100;
    const auto ref = build_null_reference(f, n, 1999, 0.95, RngSeed{8800});
    int reject = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      RandomStream rng(RngSeed{8801}, {std::uint64_t(StreamPurpose::test_sample), std::uint64_t(f),
                                       std::uint64_t(t)});
      std::vector<double> s(n);
      for (double& x : s) x = sample_weight(f, rng);
      std::sort(s.begin(), s.end());
      reject += ad_test(ref, s).p_value <= 0.05;
    }
    const double rate = double(reject) / trials;
    if (rate < 0.03 || rate > 0.07) o.pass = false;
    summary += "AD null rejection " + std::string(family_name(f)) + fmt(" %.3f, ", rate);
  }
  summary.resize(summary.size() - 2);
  o.detail = "recovery " + summary;
  return o;
}

Outcome criterion6() {
  Outcome o;
  const double got = 4 * CovKind(8).delta();
  const double want = 1.0 / 9 - 2.96e-3;
  o.pass = std::fabs(got - want) <= 1e-4;
  o.detail = "4*delta8 = " + fmt("%.7f", got) + ", reference " + fmt("%.7f", want);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::string micro = shell_quote(kData + "/tri_micro.csv");
  auto pipeline = [&](const std::string& tag, const std::string& env) {
    const fs::path dir = kWork / tag;
    fs::create_directories(dir);
    const std::string cli = env + shell_quote(kCli);
    int rc = run(cli + " aggregate " + micro + " -o " + shell_quote(dir / "macro.csv"));
    rc = rc ? rc : run(cli + " stats " + shell_quote(dir / "macro.csv") + " -o " + shell_quote(dir / "stats.csv"));
    rc = rc ? rc : run(cli + " fit " + micro + " --seed 11 -o " + shell_quote(dir / "fit.json") +
                       " 2> " + shell_quote(dir / "fit.err"));
    return rc;
  };
  const int a = pipeline("run_a", "");
  const int b = pipeline("run_b", "SYMCOV_THREADS=1 ");
  if (a != 0 || b != 0) {
    o.pass = false;
    o.detail = "pipeline exit codes " + std::to_string(a) + "/" + std::to_string(b);
    return o;
  }
  for (const char* f : {"macro.csv", "stats.csv", "fit.json"}) {
    if (slurp(kWork / "run_a" / f) != slurp(kWork / "run_b" / f)) {
      o.pass = false;
      o.detail += std::string(" ") + f + " differs;";
    }
  }
  const auto fit = nlohmann::json::parse(slurp(kWork / "run_a" / "fit.json"));
  const std::string rec = fit.at("recommended").get<std::string>();
  if (rec != "triangular") {
    o.pass = false;
    o.detail += " recommended " + rec + ";";
  }
  o.detail = "aggregate -> stats -> fit byte-identical across runs and thread counts, recommended " +
             rec + o.detail;
  return o;
}

} // namespace

int main() {
  fs::create_directories(kWork);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 golden population matrices", criterion1},
      {"2 limits form equals center/range form", criterion2},
      {"3 property suites", criterion3},
      {"4 micro/macro moment convergence", criterion4},
      {"5 model selection recovery and AD calibration", criterion5},
      {"6 delta8 constant", criterion6},
      {"7 end-to-end CLI pipeline determinism", criterion7},
  };
  const double budget[] = {1, 10, 60, 60, 300, 1, 60};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget[i]) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", budget[i]);
    }
    failed += !o.pass;
    std::printf("%s criterion %s [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
