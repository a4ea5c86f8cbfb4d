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
// symcov: command-line front end for the interval covariance library.

#include "symcov/symcov.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace symcov;

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail_input("cannot open \"" + path + "\"");
  return in;
}

template <class Reader>
auto read_input(const std::string& path, Reader&& reader) {
  if (path == "-") return reader(std::cin);
  auto in = open_in(path);
  return reader(in);
}

/// Writes text to path, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::fail_input("cannot write \"" + path + "\"");
  out << text;
  if (!out) detail::fail_input("write failed for \"" + path + "\"");
}

void warn(const std::string& msg) { std::cerr << "symcov: warning: " << msg << '\n'; }

std::vector<CovKind> parse_k_list(const std::string& spec) {
  std::vector<CovKind> out;
  if (spec == "all") {
    for (CovKind k : CovKind::all()) out.push_back(k);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int k = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      detail::fail_input("invalid --k entry \"" + item + "\"");
    }
    out.emplace_back(k);
  }
  if (out.empty()) detail::fail_input("--k is empty");
  return out;
}

std::string matrices_output(const std::vector<std::string>& names,
                            const std::optional<Vector>& mean,
                            const std::vector<CovKind>& kinds,
                            const std::vector<SymmetricMatrix>& covs,
                            const std::vector<SymmetricMatrix>& cors,
                            const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    io::json j;
    j["variables"] = names;
    if (mean) j["mean"] = *mean;
    j["covariance"] = io::json::array();
    for (std::size_t t = 0; t < kinds.size(); ++t) {
      j["covariance"].push_back(io::matrix_json(kinds[t], names, covs[t]));
    }
    if (!cors.empty()) {
      j["correlation"] = io::json::array();
      for (std::size_t t = 0; t < kinds.size(); ++t) {
        j["correlation"].push_back(io::matrix_json(kinds[t], names, cors[t]));
      }
    }
    out << j.dump(2) << '\n';
    return out.str();
  }
  bool first = true;
  auto sep = [&] {
    if (!first) out << '\n';
    first = false;
  };
  if (mean) {
    sep();
    io::write_vector_csv(out, "mean", names, *mean);
  }
  for (std::size_t t = 0; t < kinds.size(); ++t) {
    sep();
    io::write_matrix_csv(out, "cov_k" + std::to_string(kinds[t].k()), names, covs[t]);
  }
  for (std::size_t t = 0; t < cors.size(); ++t) {
    sep();
    io::write_matrix_csv(out, "cor_k" + std::to_string(kinds[t].k()), names, cors[t]);
  }
  return out.str();
}

struct Options {
  std::string input = "-";
  std::string output;
  std::string k = "all";
  std::string format = "csv";
  bool cov_only = false;
  // simulate
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string model = "continuous-uniform";
  int scenario = 1;
  std::size_t points = 0;
  std::string micro_out;
  // fit
  std::string macro;
  bool exclude_boundary = false;
  std::size_t replicates = 1000;
  std::string candidates =
      "continuous-uniform,triangular,truncated-normal";
  std::string u_out;
  std::string qq_out;
  // pairs
  int width = 800;
  int height = 800;
  std::string categories;
  std::string color_by;
};

int cmd_aggregate(const Options& o) {
  const MicroTable micro = read_input(o.input, io::read_micro_csv);
  for (const auto& [group, count] : group_sizes(micro)) {
    if (count == 1) {
      warn("group \"" + group + "\" has a single row; its intervals have zero width");
    }
  }
  std::ostringstream out;
  io::write_macro_csv(out, aggregate_microdata(micro));
  emit(o.output, out.str());
  return 0;
}

int cmd_stats(const Options& o) {
  const IntervalDataset data = read_input(o.input, io::read_macro_csv);
  if (data.n() == 1) {
    warn("n = 1: center covariances vanish and only range terms remain");
  }
  const auto kinds = parse_k_list(o.k);
  std::vector<SymmetricMatrix> covs, cors;
  for (CovKind k : kinds) covs.push_back(sample_cov_matrix(data, k));
  if (!o.cov_only) {
    for (const auto& s : covs) {
      cors.push_back(correlation_from_covariance(s, data.variable_names()));
    }
  }
  emit(o.output, matrices_output(data.variable_names(), sample_mean(data), kinds,
                                 covs, cors, o.format));
  return 0;
}

int cmd_population_cov(const Options& o) {
  const PopulationParams params = read_input(o.input, io::read_params_json);
  const auto kinds = parse_k_list(o.k);
  const auto names = default_variable_names(params.p());
  std::vector<SymmetricMatrix> covs, cors;
  for (CovKind k : kinds) covs.push_back(population_cov_matrix(params, k));
  if (!o.cov_only) {
    for (const auto& s : covs) cors.push_back(correlation_from_covariance(s, names));
  }
  emit(o.output, matrices_output(names, std::nullopt, kinds, covs, cors, o.format));
  return 0;
}

int cmd_simulate(const Options& o) {
  const PopulationParams params = read_input(o.input, io::read_params_json);
  const WeightModel model{parse_family(o.model), parse_scenario(o.scenario)};
  const RngSeed seed{*o.seed};
  const double expected = negative_range_probability(params);
  if (expected > 0.01) {
    warn("parameters imply a negative range with probability " +
         io::format_double(expected) + "; draws are rejected and redrawn");
  }
  const SimulatedMacro macro = simulate_macrodata(params, o.n, seed);
  if (macro.rejection_rate > 0.01) {
    warn("rejection rate " + io::format_double(macro.rejection_rate) +
         " exceeds 1%; the sample is truncated to nonnegative ranges");
  }
  std::ostringstream out;
  io::write_macro_csv(out, macro.data);
  emit(o.output, out.str());
  if (o.points > 0) {
    const auto micro = simulate_microdata(macro.data, model, o.points, seed);
    std::ostringstream mo;
    io::write_micro_csv(mo, micro.table);
    emit(o.micro_out, mo.str());
  } else if (!o.micro_out.empty()) {
    detail::fail_input("--micro-out needs --points-per-object");
  }
  return 0;
}

int cmd_fit(const Options& o) {
  const MicroTable micro = read_input(o.input, io::read_micro_csv);
  bool exclude = o.exclude_boundary;
  std::optional<IntervalDataset> macro;
  if (o.macro.empty()) {
    macro = aggregate_microdata(micro);
    if (!exclude) {
      warn("no --macro given: limits come from the data, boundary points excluded");
    }
    exclude = true;
  } else {
    macro = read_input(o.macro, io::read_macro_csv);
  }
  const WeightTable u = recover_weights(micro, *macro, exclude);
  if (!o.u_out.empty()) {
    std::ostringstream uo;
    io::write_weight_csv(uo, u);
    emit(o.u_out, uo.str());
  }
  std::vector<WeightModel> candidates;
  {
    std::stringstream ss(o.candidates);
    std::string name;
    while (std::getline(ss, name, ',')) {
      candidates.push_back({parse_family(name), Scenario::independent});
    }
  }
  FitOptions fo;
  fo.replicates = o.replicates;
  const FitReport report = select_model(u, candidates, RngSeed{*o.seed}, fo);
  for (const auto& name : report.skipped_variables) {
    warn("variable \"" + name + "\" has too few usable weights and was skipped");
  }
  emit(o.output, io::fit_report_json(report).dump(2) + "\n");

  const auto& rec = report.recommendation();
  std::cerr << "recommended: " << family_name(rec.model.family) << " (scenario "
            << static_cast<int>(report.inferred_scenario()) << ", ";
  if (report.recommended_kind) {
    std::cerr << "k=" << report.recommended_kind->k();
  } else {
    std::cerr << "no matching k";
  }
  std::cerr << ")\n";
  if (report.shared_weight_evidence) {
    std::cerr << "scenario 2 evidence: equal weights within every row\n";
  }
  if (!o.qq_out.empty()) {
    if (!is_continuous(rec.model.family)) {
      detail::fail_input("--qq-out needs a continuous recommended model");
    }
    const auto pooled = u.pooled();
    const auto env = qq_envelope(pooled, rec.model, fo.level, fo.replicates,
                                 RngSeed{*o.seed});
    std::ostringstream qo;
    io::write_qq_csv(qo, env);
    emit(o.qq_out, qo.str());
  }
  return 0;
}

int cmd_pairs(const Options& o) {
  const IntervalDataset data = read_input(o.input, io::read_macro_csv);
  PlotSpec spec;
  spec.width = o.width;
  spec.height = o.height;
  spec.k_list.clear();
  for (CovKind k : parse_k_list(o.k)) spec.k_list.push_back(k.k());
  if (!o.categories.empty()) {
    if (o.color_by.empty()) detail::fail_input("--categories needs --color-by");
    auto in = open_in(o.categories);
    spec.color_by = io::read_categories_csv(in, o.color_by);
  }
  emit(o.output, render_pairs_svg(data, spec));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic covariance and correlation for interval-valued data"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", o.input, what + " (- for stdin)");
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
  };
  auto add_matrix_flags = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "definitions: all or a list such as 1,3");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--cov-only", o.cov_only, "omit correlation matrices");
  };

  auto* aggregate = app.add_subcommand("aggregate", "micro CSV to min/max macro CSV");
  add_io(aggregate, "micro CSV");

  auto* stats = app.add_subcommand("stats", "sample mean, covariance and correlation");
  add_io(stats, "macro CSV");
  add_matrix_flags(stats);

  auto* pop = app.add_subcommand("population-cov", "population matrices from params JSON");
  add_io(pop, "params JSON");
  add_matrix_flags(pop);

  auto* simulate = app.add_subcommand("simulate", "simulate macro and micro data");
  add_io(simulate, "params JSON");
  simulate->add_option("--n", o.n, "number of objects")->required();
  simulate->add_option("--seed", o.seed, "random seed")->required();
  simulate->add_option("--model", o.model, "weight family for micro data");
  simulate->add_option("--scenario", o.scenario, "1 independent, 2 shared weight");
  simulate->add_option("--points-per-object", o.points, "micro rows per object");
  simulate->add_option("--micro-out", o.micro_out, "micro CSV file");

  auto* fit = app.add_subcommand("fit", "recover weights and select a weight model");
  add_io(fit, "micro CSV");
  fit->add_option("--macro", o.macro, "macro CSV; omitted means aggregate first");
  fit->add_flag("--exclude-boundary", o.exclude_boundary,
                "drop values equal to their group min or max");
  fit->add_option("--seed", o.seed, "random seed")->required();
  fit->add_option("--replicates", o.replicates, "simulated samples per test");
  fit->add_option("--candidates", o.candidates, "comma-separated weight families");
  fit->add_option("--u-out", o.u_out, "write recovered weights CSV");
  fit->add_option("--qq-out", o.qq_out, "write pooled QQ band CSV of the recommendation");

  auto* pairs = app.add_subcommand("pairs", "SVG scatterplot matrix");
  add_io(pairs, "macro CSV");
  o.k = "all";
  pairs->add_option("--k", o.k, "definitions printed in upper panels");
  pairs->add_option("--width", o.width, "pixels");
  pairs->add_option("--height", o.height, "pixels");
  pairs->add_option("--categories", o.categories, "CSV id,<column>,... for colours");
  pairs->add_option("--color-by", o.color_by, "category column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  if (pairs->parsed() && pairs->count("--k") == 0) o.k = "1,2,3";

  try {
    if (aggregate->parsed()) return cmd_aggregate(o);
    if (stats->parsed()) return cmd_stats(o);
    if (pop->parsed()) return cmd_population_cov(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (fit->parsed()) return cmd_fit(o);
    if (pairs->parsed()) return cmd_pairs(o);
  } catch (const InfeasibleError& e) {
    std::cerr << "symcov: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "symcov: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
