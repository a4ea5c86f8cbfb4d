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
#ifndef SYMCOV_IO_HPP
#define SYMCOV_IO_HPP

#include "symcov/cov_kind.hpp"
#include "symcov/dataset.hpp"
#include "symcov/error.hpp"
#include "symcov/goodness_of_fit.hpp"
#include "symcov/matrix.hpp"
#include "symcov/microdata.hpp"
#include "symcov/model_select.hpp"
#include "symcov/population.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// CSV and JSON formats. CSV is comma separated with LF line endings and a
// '.' decimal point; fields may be double-quoted. Reader errors are InputError
// and name the 1-based line.

namespace symcov::io {

using json = nlohmann::ordered_json;

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) detail::fail_input("cannot format number");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s, std::size_t line,
                           std::string_view column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    detail::fail_input("line " + std::to_string(line) + ": invalid number \"" +
                       std::string(s) + "\" in column \"" + std::string(column) +
                       "\"");
  }
  return v;
}

/// One CSV record split into fields.
inline std::vector<std::string> split_csv_line(std::string_view line,
                                               std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      if (!field.empty() || was_quoted) {
        detail::fail_input("line " + std::to_string(line_no) +
                           ": stray quote in field");
      }
      quoted = was_quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) {
    detail::fail_input("line " + std::to_string(line_no) + ": unterminated quote");
  }
  out.push_back(std::move(field));
  return out;
}

inline std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct CsvRecords {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

/// Reads a header and data records. Blank lines are skipped; a trailing CR is
/// tolerated. Every record must have as many fields as the header.
inline CsvRecords read_csv(std::istream& in) {
  CsvRecords out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (!have_header) {
      out.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != out.header.size()) {
      detail::fail_input("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(out.header.size()) + " fields, got " +
                         std::to_string(fields.size()));
    }
    out.rows.push_back(std::move(fields));
    out.line_numbers.push_back(line_no);
  }
  if (!have_header) detail::fail_input("empty input: no header line");
  if (out.rows.empty()) detail::fail_input("no data rows after the header");
  return out;
}

/// Macro CSV: `id,<var>_min,<var>_max,...`.
inline IntervalDataset read_macro_csv(std::istream& in) {
  const CsvRecords csv = read_csv(in);
  const auto& h = csv.header;
  if (h.empty() || h[0] != "id" || h.size() < 3 || (h.size() - 1) % 2 != 0) {
    detail::fail_input("line 1: macro header must be id,<var>_min,<var>_max,...");
  }
  std::vector<std::string> names;
  for (std::size_t c = 1; c < h.size(); c += 2) {
    const std::string& lo = h[c];
    const std::string& hi = h[c + 1];
    const bool ok = lo.size() > 4 && hi.size() > 4 &&
                    lo.ends_with("_min") && hi.ends_with("_max") &&
                    lo.substr(0, lo.size() - 4) == hi.substr(0, hi.size() - 4);
    if (!ok) {
      detail::fail_input("line 1: columns \"" + lo + "\",\"" + hi +
                         "\" are not a <var>_min,<var>_max pair");
    }
    names.push_back(lo.substr(0, lo.size() - 4));
  }
  std::vector<std::string> ids;
  std::vector<Interval> cells;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    const std::size_t line = csv.line_numbers[r];
    ids.push_back(row[0]);
    for (std::size_t j = 0; j < names.size(); ++j) {
      const double a = parse_double(row[1 + 2 * j], line, h[1 + 2 * j]);
      const double b = parse_double(row[2 + 2 * j], line, h[2 + 2 * j]);
      if (a > b) {
        detail::fail_input("line " + std::to_string(line) + ": variable \"" +
                           names[j] + "\" has min > max (negative range)");
      }
      cells.push_back(interval_from_limits(a, b));
    }
  }
  return IntervalDataset(std::move(ids), std::move(names), std::move(cells));
}

inline void write_macro_csv(std::ostream& out, const IntervalDataset& d) {
  out << "id";
  for (const auto& v : d.variable_names()) {
    out << ',' << quote_csv(v + "_min") << ',' << quote_csv(v + "_max");
  }
  out << '\n';
  for (std::size_t i = 0; i < d.n(); ++i) {
    out << quote_csv(d.object_ids()[i]);
    for (const Interval& x : d.row(i)) {
      out << ',' << format_double(x.lower()) << ',' << format_double(x.upper());
    }
    out << '\n';
  }
}

/// Micro CSV: `id,<var1>,...,<varp>`; id is the group id, repeated per row.
inline MicroTable read_micro_csv(std::istream& in) {
  const CsvRecords csv = read_csv(in);
  const auto& h = csv.header;
  if (h.size() < 2 || h[0] != "id") {
    detail::fail_input("line 1: micro header must be id,<var1>,...,<varp>");
  }
  std::vector<std::string> names(h.begin() + 1, h.end());
  for (const auto& name : names) {
    if (name.empty()) detail::fail_input("line 1: empty variable name");
  }
  std::vector<std::string> groups;
  std::vector<double> values;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    groups.push_back(row[0]);
    for (std::size_t j = 0; j < names.size(); ++j) {
      values.push_back(parse_double(row[1 + j], csv.line_numbers[r], names[j]));
    }
  }
  return MicroTable(std::move(groups), std::move(names), std::move(values));
}

inline void write_micro_csv(std::ostream& out, const MicroTable& t) {
  out << "id";
  for (const auto& v : t.variable_names()) out << ',' << quote_csv(v);
  out << '\n';
  for (std::size_t r = 0; r < t.m(); ++r) {
    out << quote_csv(t.group_ids()[r]);
    for (double v : t.row(r)) out << ',' << format_double(v);
    out << '\n';
  }
}

/// u-table CSV: as the micro format, with empty cells for missing weights.
inline void write_weight_csv(std::ostream& out, const WeightTable& u) {
  out << "id";
  for (const auto& v : u.variable_names()) out << ',' << quote_csv(v);
  out << '\n';
  for (std::size_t r = 0; r < u.m(); ++r) {
    out << quote_csv(u.group_ids()[r]);
    for (std::size_t j = 0; j < u.p(); ++j) {
      out << ',';
      if (const auto& v = u.at(r, j)) out << format_double(*v);
    }
    out << '\n';
  }
}

inline WeightTable read_weight_csv(std::istream& in) {
  const CsvRecords csv = read_csv(in);
  const auto& h = csv.header;
  if (h.size() < 2 || h[0] != "id") {
    detail::fail_input("line 1: weight header must be id,<var1>,...,<varp>");
  }
  std::vector<std::string> names(h.begin() + 1, h.end());
  std::vector<std::string> ids;
  std::vector<std::optional<double>> cells;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    ids.push_back(csv.rows[r][0]);
    for (std::size_t j = 0; j < names.size(); ++j) {
      const auto& s = csv.rows[r][1 + j];
      if (s.empty()) {
        cells.emplace_back();
      } else {
        cells.emplace_back(parse_double(s, csv.line_numbers[r], names[j]));
      }
    }
  }
  return WeightTable(std::move(ids), std::move(names), std::move(cells));
}

/// Categorical side table `id,<col>,...`; returns the values of one column
/// keyed by object id.
inline std::map<std::string, std::string>
read_categories_csv(std::istream& in, const std::string& column) {
  const CsvRecords csv = read_csv(in);
  const auto& h = csv.header;
  if (h.size() < 2 || h[0] != "id") {
    detail::fail_input("line 1: category header must be id,<column>,...");
  }
  std::size_t col = 0;
  for (std::size_t c = 1; c < h.size(); ++c) {
    if (h[c] == column) col = c;
  }
  if (col == 0) detail::fail_input("category column \"" + column + "\" not found");
  std::map<std::string, std::string> out;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (!out.emplace(csv.rows[r][0], csv.rows[r][col]).second) {
      detail::fail_input("line " + std::to_string(csv.line_numbers[r]) +
                         ": duplicate id \"" + csv.rows[r][0] + "\"");
    }
  }
  return out;
}

/// Matrix block: header `<label>,<names...>`, then one row per variable.
inline void write_matrix_csv(std::ostream& out, const std::string& label,
                             const std::vector<std::string>& names,
                             const SymmetricMatrix& m) {
  out << quote_csv(label);
  for (const auto& v : names) out << ',' << quote_csv(v);
  out << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << quote_csv(names.at(i));
    for (std::size_t j = 0; j < m.dim(); ++j) out << ',' << format_double(m(i, j));
    out << '\n';
  }
}

inline void write_vector_csv(std::ostream& out, const std::string& label,
                             const std::vector<std::string>& names,
                             const Vector& v) {
  out << quote_csv(label);
  for (const auto& name : names) out << ',' << quote_csv(name);
  out << "\nvalue";
  for (double x : v) out << ',' << format_double(x);
  out << '\n';
}

inline json matrix_json(CovKind kind, const std::vector<std::string>& names,
                        const SymmetricMatrix& m) {
  return json{{"kind", kind.k()}, {"variables", names}, {"matrix", m.rows()}};
}

inline std::vector<std::vector<double>> json_matrix(const json& j,
                                                    const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    detail::fail_input("params: \"" + key + "\" must be an array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j.at(key)) {
    if (!row.is_array()) {
      detail::fail_input("params: \"" + key + "\" must be an array of arrays");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) detail::fail_input("params: \"" + key + "\" has a non-number");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Vector json_vector(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    detail::fail_input("params: \"" + key + "\" must be an array");
  }
  Vector out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) detail::fail_input("params: \"" + key + "\" has a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

/// `{ "mu_c": [...], "sigma_cc": [[...]], "mu_r": [...], "sigma_rr": [[...]],
/// "cross_cr": [[...]] }`, cross_cr optional. The result is validated.
inline PopulationParams read_params_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    detail::fail_input(std::string("params: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) detail::fail_input("params: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "mu_c" && key != "sigma_cc" && key != "mu_r" &&
        key != "sigma_rr" && key != "cross_cr") {
      detail::fail_input("params: unknown key \"" + key + "\"");
    }
  }
  PopulationParams params;
  params.mu_c = json_vector(j, "mu_c");
  params.sigma_cc = SymmetricMatrix::from_rows(json_matrix(j, "sigma_cc"), "sigma_cc");
  params.mu_r = json_vector(j, "mu_r");
  params.sigma_rr = SymmetricMatrix::from_rows(json_matrix(j, "sigma_rr"), "sigma_rr");
  if (j.contains("cross_cr")) params.cross_cr = json_matrix(j, "cross_cr");
  validate_params(params);
  return params;
}

inline json params_json(const PopulationParams& params) {
  json j{{"mu_c", params.mu_c},
         {"sigma_cc", params.sigma_cc.rows()},
         {"mu_r", params.mu_r},
         {"sigma_rr", params.sigma_rr.rows()}};
  if (params.cross_cr) j["cross_cr"] = *params.cross_cr;
  return j;
}

namespace json_detail {

inline json number_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

inline json sample_fit_json(const SampleFit& f) {
  return json{{"n", f.n},
              {"ad", number_or_null(f.ad)},
              {"p", f.p_value},
              {"exceedance", f.exceedance}};
}

} // namespace json_detail

inline json fit_report_json(const FitReport& r) {
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    json per_variable = json::object();
    json exceedance = json::object();
    for (std::size_t j = 0; j < r.variables.size(); ++j) {
      per_variable[r.variables[j]] = json_detail::sample_fit_json(c.per_variable[j]);
      exceedance[r.variables[j]] = c.per_variable[j].exceedance;
    }
    exceedance["pooled"] = c.pooled.exceedance;
    candidates.push_back(json{
        {"model", std::string(family_name(c.model.family))},
        {"test", is_continuous(c.model.family) ? "anderson-darling" : "support"},
        {"ad", json_detail::number_or_null(c.pooled.ad)},
        {"p", c.pooled.p_value},
        {"min_p", c.min_p_value},
        {"exceedance", exceedance},
        {"per_variable", per_variable}});
  }
  json corr = json::array();
  for (const auto& row : r.scenario_correlations) {
    json jr = json::array();
    for (double v : row) jr.push_back(json_detail::number_or_null(v));
    corr.push_back(jr);
  }
  const auto& rec = r.recommendation();
  return json{
      {"variables", r.variables},
      {"skipped_variables", r.skipped_variables},
      {"candidates", candidates},
      {"scenario_correlations", corr},
      {"scenario_2_evidence", r.shared_weight_evidence},
      {"scenario", static_cast<int>(r.inferred_scenario())},
      {"recommended", std::string(family_name(rec.model.family))},
      {"recommended_k",
       r.recommended_kind ? json(r.recommended_kind->k()) : json(nullptr)}};
}

/// QQ band CSV `order,lo,hi,observed`, order 1-based.
inline void write_qq_csv(std::ostream& out, const QqEnvelope& env) {
  out << "order,lo,hi,observed\n";
  for (std::size_t i = 0; i < env.observed.size(); ++i) {
    out << (i + 1) << ',' << format_double(env.lo[i]) << ','
        << format_double(env.hi[i]) << ',' << format_double(env.observed[i])
        << '\n';
  }
}

} // namespace symcov::io

#endif // SYMCOV_IO_HPP
