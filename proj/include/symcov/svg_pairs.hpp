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
#ifndef SYMCOV_SVG_PAIRS_HPP
#define SYMCOV_SVG_PAIRS_HPP

#include "symcov/cov_kind.hpp"
#include "symcov/dataset.hpp"
#include "symcov/error.hpp"
#include "symcov/sample_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Scatterplot matrix of interval data: lower panels draw each object as the
// rectangle spanned by its two intervals, upper panels list the sample
// correlations for the requested definitions, and the diagonal names the
// variable.

namespace symcov {

struct PlotSpec {
  int width = 800;
  int height = 800;
  /// Category per object id; objects without an entry share one group.
  std::optional<std::map<std::string, std::string>> color_by;
  std::vector<int> k_list{1, 2, 3};
};

inline void validate_plot_spec(const PlotSpec& spec) {
  if (spec.width < 100 || spec.height < 100) {
    detail::fail_input("plot width and height must be at least 100 pixels");
  }
  if (spec.k_list.empty()) detail::fail_input("plot k list is empty");
  for (int k : spec.k_list) CovKind{k};
}

inline constexpr std::array<std::string_view, 10> kPalette = {
    "#000000", "#1f4fd1", "#d12a1f", "#1f9e3a", "#8c3fc0",
    "#e07b00", "#00868b", "#b8860b", "#c0157a", "#5a5a5a",
};

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += ch;
    }
  }
  return out;
}

} // namespace detail

/// Stroke colour per object: categories in order of first appearance take
/// successive palette entries (cycling past ten).
inline std::vector<std::string_view> object_colors(const IntervalDataset& d,
                                                   const PlotSpec& spec) {
  std::vector<std::string_view> out(d.n(), kPalette[0]);
  if (!spec.color_by) return out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < d.n(); ++i) {
    auto it = spec.color_by->find(d.object_ids()[i]);
    const std::string cat = it == spec.color_by->end() ? std::string() : it->second;
    auto [pos, inserted] = seen.emplace(cat, seen.size());
    out[i] = kPalette[pos->second % kPalette.size()];
  }
  return out;
}

/// SVG text of the pairs grid. Byte-identical for identical inputs.
inline std::string render_pairs_svg(const IntervalDataset& d,
                                    const PlotSpec& spec) {
  validate_plot_spec(spec);
  const std::size_t p = d.p();
  if (p < 2) detail::fail_input("pairs plot needs at least 2 variables");
  const double pw = double(spec.width) / double(p);
  const double ph = double(spec.height) / double(p);
  const double pad = 6.0;

  // Axis limits per variable, widened for degenerate spans.
  std::vector<double> lo(p), hi(p);
  for (std::size_t j = 0; j < p; ++j) {
    lo[j] = hi[j] = d.at(0, j).lower();
    for (std::size_t i = 0; i < d.n(); ++i) {
      lo[j] = std::min(lo[j], d.at(i, j).lower());
      hi[j] = std::max(hi[j], d.at(i, j).upper());
    }
    if (!(hi[j] > lo[j])) {
      lo[j] -= 0.5;
      hi[j] += 0.5;
    }
  }

  // Correlations per requested k; NaN where a variance is zero.
  std::vector<SymmetricMatrix> covs;
  for (int k : spec.k_list) covs.push_back(sample_cov_matrix(d, CovKind(k)));
  auto cor = [&](std::size_t idx, std::size_t a, std::size_t b) {
    const auto& s = covs[idx];
    if (!(s(a, a) > 0.0) || !(s(b, b) > 0.0)) return std::nan("");
    return std::clamp(s(a, b) / std::sqrt(s(a, a) * s(b, b)), -1.0, 1.0);
  };

  const auto colors = object_colors(d, spec);
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\" font-family=\"sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";

  for (std::size_t row = 0; row < p; ++row) {
    for (std::size_t col = 0; col < p; ++col) {
      const double x0 = double(col) * pw;
      const double y0 = double(row) * ph;
      svg += "<g class=\"panel\" data-row=\"" + std::to_string(row + 1) +
             "\" data-col=\"" + std::to_string(col + 1) + "\">\n";
      svg += "<rect class=\"frame\" x=\"" + detail::fmt("%.2f", x0) + "\" y=\"" +
             detail::fmt("%.2f", y0) + "\" width=\"" + detail::fmt("%.2f", pw) +
             "\" height=\"" + detail::fmt("%.2f", ph) +
             "\" fill=\"none\" stroke=\"#999999\"/>\n";
      if (row == col) {
        svg += "<text class=\"name\" x=\"" + detail::fmt("%.2f", x0 + pw / 2) +
               "\" y=\"" + detail::fmt("%.2f", y0 + ph / 2) +
               "\" text-anchor=\"middle\" font-size=\"14\">" +
               detail::xml_escape(d.variable_names()[row]) + "</text>\n";
      } else if (row > col) {
        // x: variable col, y: variable row (upwards).
        const double sx = (pw - 2 * pad) / (hi[col] - lo[col]);
        const double sy = (ph - 2 * pad) / (hi[row] - lo[row]);
        for (std::size_t i = 0; i < d.n(); ++i) {
          const Interval& xi = d.at(i, col);
          const Interval& yi = d.at(i, row);
          const double rx = x0 + pad + (xi.lower() - lo[col]) * sx;
          const double ry = y0 + ph - pad - (yi.upper() - lo[row]) * sy;
          svg += "<rect class=\"obj\" x=\"" + detail::fmt("%.2f", rx) +
                 "\" y=\"" + detail::fmt("%.2f", ry) + "\" width=\"" +
                 detail::fmt("%.2f", xi.range() * sx) + "\" height=\"" +
                 detail::fmt("%.2f", yi.range() * sy) +
                 "\" fill=\"none\" stroke=\"" + std::string(colors[i]) +
                 "\" stroke-width=\"1\"/>\n";
        }
      } else {
        const double line_h = std::min(16.0, (ph - 2 * pad) / double(covs.size()));
        for (std::size_t t = 0; t < covs.size(); ++t) {
          const double r = cor(t, row, col);
          const std::string value =
              std::isnan(r) ? std::string("NA") : detail::fmt("%.3f", r);
          svg += "<text class=\"cor\" x=\"" + detail::fmt("%.2f", x0 + pad) +
                 "\" y=\"" + detail::fmt("%.2f", y0 + pad + line_h * double(t + 1)) +
                 "\" font-size=\"" + detail::fmt("%.1f", std::max(6.0, line_h - 3)) +
                 "\">k=" + std::to_string(spec.k_list[t]) + ": " + value +
                 "</text>\n";
        }
      }
      svg += "</g>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace symcov

#endif // SYMCOV_SVG_PAIRS_HPP
