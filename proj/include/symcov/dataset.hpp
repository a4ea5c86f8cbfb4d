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
#ifndef SYMCOV_DATASET_HPP
#define SYMCOV_DATASET_HPP

#include "symcov/error.hpp"
#include "symcov/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace symcov {

/// Unvalidated macro-data as read from a file or assembled by hand. Cells are
/// (center, range) pairs so that a negative range can be represented and
/// reported.
struct DatasetTable {
  struct Cell {
    double center = 0.0;
    double range = 0.0;
  };
  std::vector<std::string> object_ids;
  std::vector<std::string> variable_names;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string cell_name(std::size_t i, std::size_t j) {
  return "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline void require_unique(const std::vector<std::string>& names,
                           const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& s : names) {
    if (!seen.insert(s).second) {
      fail_input(std::string("duplicate ") + what + " \"" + s + "\"");
    }
  }
}

} // namespace detail

/// Throws InputError describing the first violation found. Coordinates in
/// messages are 1-based (row, column).
inline void validate_dataset(const DatasetTable& d) {
  if (d.rows.empty() || d.object_ids.empty()) {
    detail::fail_input("dataset has no objects");
  }
  if (d.variable_names.empty()) {
    detail::fail_input("dataset has no variables");
  }
  if (d.object_ids.size() != d.rows.size()) {
    detail::fail_input("dataset has " + std::to_string(d.rows.size()) +
                       " rows but " + std::to_string(d.object_ids.size()) +
                       " object ids");
  }
  detail::require_unique(d.object_ids, "object id");
  detail::require_unique(d.variable_names, "variable name");
  const std::size_t p = d.variable_names.size();
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (d.rows[i].size() != p) {
      detail::fail_input("ragged row " + std::to_string(i + 1) + ": " +
                         std::to_string(d.rows[i].size()) + " cells, expected " +
                         std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const auto& c = d.rows[i][j];
      if (!std::isfinite(c.center) || !std::isfinite(c.range)) {
        detail::fail_input("non-finite value at " + detail::cell_name(i, j));
      }
      if (c.range < 0.0) {
        detail::fail_input("negative range " + std::to_string(c.range) +
                           " at " + detail::cell_name(i, j));
      }
    }
  }
}

/// n x p matrix of intervals with object ids and variable names. Always valid:
/// every constructor runs validate_dataset.
class IntervalDataset {
public:
  explicit IntervalDataset(const DatasetTable& t) {
    validate_dataset(t);
    ids_ = t.object_ids;
    names_ = t.variable_names;
    cells_.reserve(t.rows.size() * names_.size());
    for (const auto& row : t.rows) {
      for (const auto& c : row) {
        cells_.push_back(Interval::from_center_range(c.center, c.range));
      }
    }
  }

  /// cells is row-major with ids.size() rows and names.size() columns.
  IntervalDataset(std::vector<std::string> ids, std::vector<std::string> names,
                  std::vector<Interval> cells)
      : ids_(std::move(ids)), names_(std::move(names)),
        cells_(std::move(cells)) {
    if (ids_.empty()) detail::fail_input("dataset has no objects");
    if (names_.empty()) detail::fail_input("dataset has no variables");
    if (cells_.size() != ids_.size() * names_.size()) {
      detail::fail_input("dataset cell count does not match n x p");
    }
    detail::require_unique(ids_, "object id");
    detail::require_unique(names_, "variable name");
  }

  std::size_t n() const noexcept { return ids_.size(); }
  std::size_t p() const noexcept { return names_.size(); }
  const std::vector<std::string>& object_ids() const noexcept { return ids_; }
  const std::vector<std::string>& variable_names() const noexcept {
    return names_;
  }

  const Interval& at(std::size_t i, std::size_t j) const {
    return cells_.at(i * names_.size() + j);
  }
  std::span<const Interval> row(std::size_t i) const {
    return std::span<const Interval>(cells_).subspan(i * p(), p());
  }
  std::span<const Interval> cells() const noexcept { return cells_; }

  std::vector<double> centers(std::size_t j) const {
    std::vector<double> out(n());
    for (std::size_t i = 0; i < n(); ++i) out[i] = at(i, j).center();
    return out;
  }
  std::vector<double> ranges(std::size_t j) const {
    std::vector<double> out(n());
    for (std::size_t i = 0; i < n(); ++i) out[i] = at(i, j).range();
    return out;
  }

  /// Row index of an object id, or n() if absent.
  std::size_t find(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    return static_cast<std::size_t>(it - ids_.begin());
  }

private:
  std::vector<std::string> ids_;
  std::vector<std::string> names_;
  std::vector<Interval> cells_;
};

/// An IntervalDataset always satisfies its invariants.
inline void validate_dataset(const IntervalDataset&) noexcept {}

/// Micro-data: m labelled rows of p real values. Rows sharing a group id are
/// the individual observations behind one symbolic object.
class MicroTable {
public:
  MicroTable(std::vector<std::string> group_ids,
             std::vector<std::string> variable_names,
             std::vector<double> values)
      : groups_(std::move(group_ids)), names_(std::move(variable_names)),
        values_(std::move(values)) {
    if (names_.empty()) detail::fail_input("micro table has no variables");
    detail::require_unique(names_, "variable name");
    if (values_.size() != groups_.size() * names_.size()) {
      detail::fail_input("micro table value count does not match m x p");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k])) {
        detail::fail_input("non-finite micro value at row " +
                           std::to_string(k / names_.size() + 1) + ", column " +
                           std::to_string(k % names_.size() + 1));
      }
    }
  }

  std::size_t m() const noexcept { return groups_.size(); }
  std::size_t p() const noexcept { return names_.size(); }
  const std::vector<std::string>& group_ids() const noexcept { return groups_; }
  const std::vector<std::string>& variable_names() const noexcept {
    return names_;
  }
  double at(std::size_t row, std::size_t j) const {
    return values_.at(row * names_.size() + j);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * p(), p());
  }
  std::span<const double> values() const noexcept { return values_; }

private:
  std::vector<std::string> groups_;
  std::vector<std::string> names_;
  std::vector<double> values_;
};

/// Groups in order of first appearance with their row counts.
inline std::vector<std::pair<std::string, std::size_t>>
group_sizes(const MicroTable& micro) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& g : micro.group_ids()) {
    auto [it, fresh] = index.try_emplace(g, out.size());
    if (fresh) out.emplace_back(g, 0);
    ++out[it->second].second;
  }
  return out;
}

/// Collapse each group of micro rows into one object whose cell for variable j
/// is [min, max] of the group's values. Output objects follow the order in
/// which groups first appear; a one-row group yields zero-range cells.
inline IntervalDataset aggregate_microdata(const MicroTable& micro) {
  if (micro.m() == 0) detail::fail_input("micro table is empty");
  const std::size_t p = micro.p();
  std::vector<std::string> ids;
  std::vector<double> lo, hi;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < micro.m(); ++r) {
    auto [it, fresh] = index.try_emplace(micro.group_ids()[r], ids.size());
    auto row = micro.row(r);
    if (fresh) {
      ids.push_back(micro.group_ids()[r]);
      lo.insert(lo.end(), row.begin(), row.end());
      hi.insert(hi.end(), row.begin(), row.end());
      continue;
    }
    const std::size_t base = it->second * p;
    for (std::size_t j = 0; j < p; ++j) {
      lo[base + j] = std::min(lo[base + j], row[j]);
      hi[base + j] = std::max(hi[base + j], row[j]);
    }
  }
  std::vector<Interval> cells;
  cells.reserve(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) {
    cells.push_back(interval_from_limits(lo[k], hi[k]));
  }
  return IntervalDataset(std::move(ids), micro.variable_names(),
                         std::move(cells));
}

} // namespace symcov

#endif // SYMCOV_DATASET_HPP
