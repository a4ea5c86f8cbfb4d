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
#ifndef SYMCOV_MICRODATA_HPP
#define SYMCOV_MICRODATA_HPP

#include "symcov/dataset.hpp"
#include "symcov/error.hpp"
#include "symcov/matrix.hpp"
#include "symcov/parallel.hpp"
#include "symcov/population.hpp"
#include "symcov/random.hpp"
#include "symcov/weights.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace symcov {

/// Macro-data drawn from a population plus sampler diagnostics.
struct SimulatedMacro {
  IntervalDataset data;
  std::size_t rejected = 0; ///< draws discarded for a negative range
  double rejection_rate = 0.0; ///< rejected / (rejected + n)
};

namespace detail {

/// Factor F with F F^t = joint covariance of (C, R), via the symmetric
/// eigendecomposition so that singular (semidefinite) matrices work.
inline Eigen::MatrixXd joint_factor(const PopulationParams& params) {
  const auto p = static_cast<Eigen::Index>(params.p());
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(2 * p, 2 * p);
  joint.topLeftCorner(p, p) = params.sigma_cc.to_eigen();
  joint.bottomRightCorner(p, p) = params.sigma_rr.to_eigen();
  if (params.cross_cr) {
    for (Eigen::Index i = 0; i < p; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) {
        const double v = (*params.cross_cr)[std::size_t(i)][std::size_t(j)];
        joint(i, p + j) = v;
        joint(p + j, i) = v;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(joint);
  const Eigen::VectorXd lambda = es.eigenvalues();
  const double tol = 1e-10 * std::max(std::fabs(joint.trace()), 1e-300);
  if (lambda.minCoeff() < -tol) {
    fail_input("params: joint covariance of centers and ranges is not positive "
               "semidefinite (check cross_cr)");
  }
  return es.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

constexpr std::size_t kMaxAttemptsPerObject = 10000;

} // namespace detail

/// Draw n objects with (C, R) jointly normal. A draw with any negative range
/// is discarded and the whole vector redrawn; more than 50% rejections is an
/// InfeasibleError. Object i always uses its own stream, so the output is
/// independent of thread count.
inline SimulatedMacro simulate_macrodata(const PopulationParams& params,
                                         std::size_t n, RngSeed seed) {
  validate_params(params);
  if (n == 0) detail::fail_input("simulate: n must be >= 1");
  const std::size_t p = params.p();
  const Eigen::MatrixXd factor = detail::joint_factor(params);
  std::vector<Interval> cells(n * p);
  std::vector<std::size_t> rejected(n, 0);
  parallel_for(n, [&](std::size_t i) {
    RandomStream rng(seed, {std::uint64_t(StreamPurpose::macro_sample), i});
    Eigen::VectorXd z(Eigen::Index(2 * p));
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == detail::kMaxAttemptsPerObject) {
        detail::fail_infeasible(
            "simulate: params imply almost surely negative ranges");
      }
      for (Eigen::Index t = 0; t < z.size(); ++t) z(t) = rng.normal();
      const Eigen::VectorXd x = factor * z;
      bool ok = true;
      for (std::size_t j = 0; j < p; ++j) {
        if (params.mu_r[j] + x(Eigen::Index(p + j)) < 0.0) ok = false;
      }
      if (!ok) {
        ++rejected[i];
        continue;
      }
      for (std::size_t j = 0; j < p; ++j) {
        cells[i * p + j] = Interval::from_center_range(
            params.mu_c[j] + x(Eigen::Index(j)),
            params.mu_r[j] + x(Eigen::Index(p + j)));
      }
      return;
    }
  });
  std::size_t total_rejected = 0;
  for (std::size_t r : rejected) total_rejected += r;
  const double rate = static_cast<double>(total_rejected) /
                      static_cast<double>(total_rejected + n);
  if (rate > 0.5) {
    detail::fail_infeasible(
        "simulate: " + std::to_string(total_rejected) + " of " +
        std::to_string(total_rejected + n) +
        " draws had a negative range; the parameters imply frequent negative "
        "ranges");
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("o" + std::to_string(i + 1));
  return {IntervalDataset(std::move(ids), default_variable_names(p),
                          std::move(cells)),
          total_rejected, rate};
}

/// Largest per-variable probability that a normal range draw is negative,
/// max_j Phi(-mu_j / sigma_j). A lower bound on the rejection rate.
inline double negative_range_probability(const PopulationParams& params) {
  double worst = 0.0;
  for (std::size_t j = 0; j < params.p(); ++j) {
    const double sd = std::sqrt(std::max(params.sigma_rr(j, j), 0.0));
    double prob = 0.0;
    if (sd > 0.0) {
      prob = normal_cdf(-params.mu_r[j] / sd);
    } else if (params.mu_r[j] < 0.0) {
      prob = 1.0;
    }
    worst = std::max(worst, prob);
  }
  return worst;
}

/// Micro-data drawn inside given macro-data, with the weights that produced it.
struct SimulatedMicro {
  MicroTable table;
  std::vector<double> weights; ///< row-major, same shape as table
};

/// For every object and replicate, draw weights and emit
/// a_j = c_j + u_j r_j / 2. Scenario 2 draws one u per micro row (the stream
/// key omits the variable index); scenario 1 draws one per cell. Points are
/// clamped to the closed interval so membership holds exactly.
inline SimulatedMicro simulate_microdata(const IntervalDataset& macro,
                                         const WeightModel& model,
                                         std::size_t points_per_object,
                                         RngSeed seed) {
  if (points_per_object == 0) {
    detail::fail_input("simulate: points per object must be >= 1");
  }
  const std::size_t n = macro.n(), p = macro.p();
  const std::size_t m = n * points_per_object;
  std::vector<double> values(m * p), weights(m * p);
  const auto purpose = std::uint64_t(StreamPurpose::micro_weight);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t r = 0; r < points_per_object; ++r) {
      const std::size_t row = i * points_per_object + r;
      std::optional<double> shared;
      if (model.scenario == Scenario::shared) {
        RandomStream rng(seed, {purpose, i, r});
        shared = sample_weight(model, rng);
      }
      for (std::size_t j = 0; j < p; ++j) {
        double u;
        if (shared) {
          u = *shared;
        } else {
          RandomStream rng(seed, {purpose, i, r, j});
          u = sample_weight(model, rng);
        }
        const Interval& x = macro.at(i, j);
        weights[row * p + j] = u;
        values[row * p + j] = std::clamp(x.center() + u * x.half_range(),
                                         x.lower(), x.upper());
      }
    }
  });
  std::vector<std::string> groups;
  groups.reserve(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < points_per_object; ++r) {
      groups.push_back(macro.object_ids()[i]);
    }
  }
  return {MicroTable(std::move(groups), macro.variable_names(), std::move(values)),
          std::move(weights)};
}

/// Recovered weights u = 2 (a - c) / r, one row per micro row. Missing cells
/// (zero range, or excluded boundary values) are std::nullopt.
class WeightTable {
public:
  WeightTable(std::vector<std::string> ids, std::vector<std::string> names,
              std::vector<std::optional<double>> cells)
      : ids_(std::move(ids)), names_(std::move(names)), cells_(std::move(cells)) {
    if (cells_.size() != ids_.size() * names_.size()) {
      detail::fail_input("weight table cell count does not match m x p");
    }
  }

  std::size_t m() const noexcept { return ids_.size(); }
  std::size_t p() const noexcept { return names_.size(); }
  const std::vector<std::string>& group_ids() const noexcept { return ids_; }
  const std::vector<std::string>& variable_names() const noexcept {
    return names_;
  }
  const std::optional<double>& at(std::size_t row, std::size_t j) const {
    return cells_.at(row * names_.size() + j);
  }

  /// Present values of column j, in row order.
  std::vector<double> column(std::size_t j) const {
    std::vector<double> out;
    for (std::size_t r = 0; r < m(); ++r) {
      if (const auto& v = at(r, j)) out.push_back(*v);
    }
    return out;
  }

  /// Present values of every column, column by column.
  std::vector<double> pooled() const {
    std::vector<double> out;
    for (std::size_t j = 0; j < p(); ++j) {
      auto c = column(j);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  std::size_t present_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(),
                      [](const auto& v) { return v.has_value(); }));
  }

private:
  std::vector<std::string> ids_;
  std::vector<std::string> names_;
  std::vector<std::optional<double>> cells_;
};

/// Micro values further than this outside their interval are an error;
/// closer ones are treated as rounding and clamped.
inline constexpr double kContainmentTolerance = 1e-9;

/// Invert A = C + U R / 2 cell by cell.
///
/// With exclude_boundary, a micro value equal (to 1e-12 relative) to the
/// minimum or maximum of its group and variable is marked missing: such
/// values defined the interval limits and would pile up at u = -1 and u = 1.
inline WeightTable recover_weights(const MicroTable& micro,
                                   const IntervalDataset& macro,
                                   bool exclude_boundary) {
  const std::size_t p = micro.p();
  if (macro.p() != p || macro.variable_names() != micro.variable_names()) {
    detail::fail_input("micro and macro variables differ");
  }
  std::unordered_map<std::string, std::size_t> object_row;
  for (std::size_t i = 0; i < macro.n(); ++i) {
    object_row.emplace(macro.object_ids()[i], i);
  }
  std::vector<std::size_t> rows(micro.m());
  for (std::size_t r = 0; r < micro.m(); ++r) {
    auto it = object_row.find(micro.group_ids()[r]);
    if (it == object_row.end()) {
      detail::fail_input("micro row " + std::to_string(r + 1) +
                         ": unknown group id \"" + micro.group_ids()[r] + "\"");
    }
    rows[r] = it->second;
  }

  std::vector<double> group_min, group_max;
  if (exclude_boundary) {
    group_min.assign(macro.n() * p, HUGE_VAL);
    group_max.assign(macro.n() * p, -HUGE_VAL);
    for (std::size_t r = 0; r < micro.m(); ++r) {
      for (std::size_t j = 0; j < p; ++j) {
        const std::size_t k = rows[r] * p + j;
        group_min[k] = std::min(group_min[k], micro.at(r, j));
        group_max[k] = std::max(group_max[k], micro.at(r, j));
      }
    }
  }
  auto same = [](double x, double y) {
    return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y));
  };

  std::vector<std::optional<double>> cells(micro.m() * p);
  for (std::size_t r = 0; r < micro.m(); ++r) {
    for (std::size_t j = 0; j < p; ++j) {
      const Interval& x = macro.at(rows[r], j);
      const double a = micro.at(r, j);
      if (a < x.lower() - kContainmentTolerance ||
          a > x.upper() + kContainmentTolerance) {
        detail::fail_input("micro row " + std::to_string(r + 1) + ", variable \"" +
                           micro.variable_names()[j] + "\": value " +
                           std::to_string(a) + " outside its interval [" +
                           std::to_string(x.lower()) + ", " +
                           std::to_string(x.upper()) + "]");
      }
      if (x.range() == 0.0) continue;
      if (exclude_boundary) {
        const std::size_t k = rows[r] * p + j;
        if (same(a, group_min[k]) || same(a, group_max[k])) continue;
      }
      const double u = 2.0 * (a - x.center()) / x.range();
      cells[r * p + j] = std::clamp(u, -1.0, 1.0);
    }
  }
  return WeightTable(micro.group_ids(), micro.variable_names(), std::move(cells));
}

} // namespace symcov

#endif // SYMCOV_MICRODATA_HPP
