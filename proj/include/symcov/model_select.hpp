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
#ifndef SYMCOV_MODEL_SELECT_HPP
#define SYMCOV_MODEL_SELECT_HPP

#include "symcov/error.hpp"
#include "symcov/goodness_of_fit.hpp"
#include "symcov/microdata.hpp"
#include "symcov/parallel.hpp"
#include "symcov/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symcov {

struct FitOptions {
  std::size_t replicates = 1000;
  double level = 0.95;
  std::size_t min_points = 10;
};

/// Fit of one candidate to one sample. For discrete candidates ad is NaN,
/// exceedance is the off-support fraction and p_value is 1 or 0.
struct SampleFit {
  std::size_t n = 0;
  double ad = std::numeric_limits<double>::quiet_NaN();
  double p_value = 1.0;
  double exceedance = 0.0;
};

struct CandidateFit {
  WeightModel model;
  std::vector<SampleFit> per_variable; ///< one per fitted variable
  SampleFit pooled;
  double min_p_value = 1.0; ///< over per-variable and pooled
};

struct FitReport {
  std::vector<std::string> variables;         ///< fitted variables
  std::vector<std::string> skipped_variables; ///< fewer than min_points values
  std::vector<CandidateFit> candidates;
  /// Pearson correlation of weights over rows where both are present; NaN
  /// when undefined.
  std::vector<std::vector<double>> scenario_correlations;
  /// Every row with two or more present weights has them all equal (1e-9),
  /// and there is at least one such row.
  bool shared_weight_evidence = false;
  std::size_t recommended = 0; ///< index into candidates
  std::optional<CovKind> recommended_kind;

  const CandidateFit& recommendation() const { return candidates.at(recommended); }
  Scenario inferred_scenario() const {
    return shared_weight_evidence ? Scenario::shared : Scenario::independent;
  }
};

inline std::vector<WeightModel> default_candidates() {
  return {{WeightFamily::continuous_uniform, Scenario::independent},
          {WeightFamily::triangular, Scenario::independent},
          {WeightFamily::truncated_normal, Scenario::independent}};
}

namespace detail {

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline bool shared_weight_evidence(const WeightTable& u) {
  bool any = false;
  for (std::size_t r = 0; r < u.m(); ++r) {
    std::optional<double> first;
    std::size_t present = 0;
    for (std::size_t j = 0; j < u.p(); ++j) {
      const auto& v = u.at(r, j);
      if (!v) continue;
      ++present;
      if (!first) {
        first = *v;
      } else if (std::fabs(*v - *first) > 1e-9) {
        return false;
      }
    }
    if (present >= 2) any = true;
  }
  return any;
}

} // namespace detail

/// Per-pair correlation of recovered weights; near 1 under a shared weight,
/// near 0 under independent weights.
inline std::vector<std::vector<double>> weight_correlations(const WeightTable& u) {
  const std::size_t p = u.p();
  std::vector<std::vector<double>> out(p, std::vector<double>(p));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l < p; ++l) {
      std::vector<double> x, y;
      for (std::size_t r = 0; r < u.m(); ++r) {
        if (u.at(r, j) && u.at(r, l)) {
          x.push_back(*u.at(r, j));
          y.push_back(*u.at(r, l));
        }
      }
      out[j][l] = detail::pearson(x, y);
    }
  }
  return out;
}

/// Fits every candidate to each variable's weights and to the pooled weights,
/// then recommends the candidate with the smallest pooled exceedance, ties
/// going to the larger minimal p-value (then to the earlier candidate).
///
/// Null references are simulated once per (family, sample size) and shared by
/// the AD p-value and the envelope.
inline FitReport select_model(const WeightTable& u,
                              const std::vector<WeightModel>& candidates,
                              RngSeed seed, const FitOptions& options = {}) {
  if (candidates.empty()) detail::fail_input("select_model: no candidates");
  if (options.min_points < kMinEnvelopeSample) {
    detail::fail_input("select_model: min_points must be at least 10");
  }
  if (u.present_count() == 0) {
    detail::fail_infeasible("no usable weights: every cell is missing");
  }

  FitReport report;
  std::vector<std::vector<double>> samples; // fitted variables, then pooled
  std::vector<double> pooled;
  for (std::size_t j = 0; j < u.p(); ++j) {
    auto col = u.column(j);
    if (col.size() < options.min_points) {
      report.skipped_variables.push_back(u.variable_names()[j]);
      continue;
    }
    report.variables.push_back(u.variable_names()[j]);
    pooled.insert(pooled.end(), col.begin(), col.end());
    std::sort(col.begin(), col.end());
    samples.push_back(std::move(col));
  }
  if (pooled.size() < options.min_points) {
    detail::fail_infeasible("too few usable weights: " +
                            std::to_string(pooled.size()) + " (need " +
                            std::to_string(options.min_points) + ")");
  }
  std::sort(pooled.begin(), pooled.end());
  samples.push_back(std::move(pooled));

  // Distinct null references needed.
  std::map<std::pair<WeightFamily, std::size_t>, std::size_t> ref_index;
  std::vector<std::pair<WeightFamily, std::size_t>> ref_keys;
  for (const auto& c : candidates) {
    if (!is_continuous(c.family)) continue;
    for (const auto& s : samples) {
      auto key = std::make_pair(c.family, s.size());
      if (ref_index.emplace(key, ref_keys.size()).second) ref_keys.push_back(key);
    }
  }
  std::vector<std::optional<NullReference>> refs(ref_keys.size());
  parallel_for(ref_keys.size(), [&](std::size_t i) {
    refs[i] = build_null_reference(ref_keys[i].first, ref_keys[i].second,
                                   options.replicates, options.level, seed);
  });

  const std::size_t cells = candidates.size() * samples.size();
  std::vector<SampleFit> fits(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const auto& model = candidates[cell / samples.size()];
    const auto& s = samples[cell % samples.size()];
    SampleFit f;
    f.n = s.size();
    if (is_continuous(model.family)) {
      const auto& ref = *refs[ref_index.at({model.family, s.size()})];
      const auto ad = ad_test(ref, s);
      f.ad = ad.statistic;
      f.p_value = ad.p_value;
      f.exceedance = qq_envelope(ref, s).exceedance;
    } else {
      f.exceedance = support_violation(s, model.family);
      f.p_value = f.exceedance == 0.0 ? 1.0 : 0.0;
    }
    fits[cell] = f;
  });

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    CandidateFit cf;
    cf.model = candidates[c];
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const SampleFit& f = fits[c * samples.size() + s];
      if (s + 1 < samples.size()) {
        cf.per_variable.push_back(f);
      } else {
        cf.pooled = f;
      }
      cf.min_p_value = std::min(cf.min_p_value, f.p_value);
    }
    report.candidates.push_back(std::move(cf));
  }

  for (std::size_t c = 1; c < report.candidates.size(); ++c) {
    const auto& best = report.candidates[report.recommended];
    const auto& cand = report.candidates[c];
    if (cand.pooled.exceedance < best.pooled.exceedance ||
        (cand.pooled.exceedance == best.pooled.exceedance &&
         cand.min_p_value > best.min_p_value)) {
      report.recommended = c;
    }
  }
  report.scenario_correlations = weight_correlations(u);
  report.shared_weight_evidence = detail::shared_weight_evidence(u);
  report.recommended_kind =
      matching_kind({report.recommendation().model.family, report.inferred_scenario()});
  return report;
}

} // namespace symcov

#endif // SYMCOV_MODEL_SELECT_HPP
