// Copyright 2026 The holodisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holodisk/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <tuple>

#include "holodisk/cli/json_io.hpp"
#include "holodisk/dbar.hpp"
#include "holodisk/doubling.hpp"
#include "holodisk/errors.hpp"

namespace holodisk::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

int coordinate_count(int m) { return m == 1 ? 3 : m == 2 ? 6 : 2 * (m + 2); }

void emit(const RunConfig& cfg, const json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output, text);
  }
}

json load_config(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidInput("config: --input is required for '" + cfg.command + "'");
  if (!fs::exists(cfg.input)) throw InvalidInput("config: input file does not exist: " + cfg.input);
  json doc = read_json_file(cfg.input);
  check_version(doc);
  return doc;
}

fs::path relative_to_input(const RunConfig& cfg, const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) path = fs::path(cfg.input).parent_path() / path;
  return path;
}

IndexOptions index_options(const RunConfig& cfg, const json& doc) {
  IndexOptions o;
  if (doc.contains("truncation")) o.truncation = doc.at("truncation").get<int>();
  if (doc.contains("tau")) o.tau = doc.at("tau").get<double>();
  if (cfg.truncation) o.truncation = *cfg.truncation;
  if (cfg.tolerance) o.tau = *cfg.tolerance;
  if (o.truncation < 1 || !(o.tau > 0.0 && o.tau < 1.0)) {
    throw InvalidInput("config: truncation must be >= 1 and tau in (0, 1)");
  }
  return o;
}

void write_plot(const RunConfig& cfg, const std::string& csv) {
  if (!cfg.plot.empty()) write_text_file(cfg.plot, csv);
}

int cmd_indices(const RunConfig& cfg, std::ostream& out) {
  const json doc = load_config(cfg);
  const GLoop g = condition_from_json(doc.at("condition"));
  const PartialIndexReport r = partial_indices(g, index_options(cfg, doc));
  out << "partial indices " << join_ints(r.indices) << ", maslov " << r.maslov << ", "
      << (r.regular ? "regular" : "not regular") << ", h0 " << r.h0 << ", h1 " << r.h1 << "\n";
  json report = {{"version", kSchemaVersion}, {"command", "indices"}, {"report", to_json(r)}};
  emit(cfg, report, out);
  write_plot(cfg, scan_csv(r));
  return kOk;
}

int cmd_double(const RunConfig& cfg, std::ostream& out) {
  const json doc = load_config(cfg);
  PartialIndexReport r;
  if (doc.contains("indices")) {
    r = report_from_indices(doc.at("indices").get<std::vector<int>>());
  } else {
    r = partial_indices(condition_from_json(doc.at("condition")), index_options(cfg, doc));
  }
  const DoubleReport d = double_disk_bundle(r);
  out << "double: genus " << d.genus << ", splitting " << join_ints(d.splitting) << ", degree " << d.degree
      << ", h0 " << d.h0 << ", h1 " << d.h1 << "\n";
  json report = {{"version", kSchemaVersion}, {"command", "double"}, {"indices", to_json(r)}, {"double", to_json(d)}};
  emit(cfg, report, out);
  write_plot(cfg, scan_csv(r));
  return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const json doc = load_config(cfg);
  LinearBVP bvp;
  bvp.condition = condition_from_json(doc.at("condition"));
  bvp.rhs = rhs_from_json(doc.at("rhs"), bvp.condition.size());
  if (doc.contains("truncation")) bvp.truncation = doc.at("truncation").get<int>();
  if (doc.contains("collocation")) bvp.collocation = doc.at("collocation").get<int>();
  if (doc.contains("tau")) bvp.tau = doc.at("tau").get<double>();
  if (doc.contains("obstruction_tolerance")) bvp.obstruction_tolerance = doc.at("obstruction_tolerance").get<double>();
  if (doc.contains("boundary_tolerance")) bvp.boundary_tolerance = doc.at("boundary_tolerance").get<double>();
  if (cfg.truncation) bvp.truncation = *cfg.truncation;
  if (cfg.tolerance) bvp.obstruction_tolerance = *cfg.tolerance;
  if (bvp.truncation < 1 || bvp.collocation < 0 || !(bvp.tau > 0) || !(bvp.obstruction_tolerance > 0) ||
      !(bvp.boundary_tolerance > 0)) {
    throw InvalidInput("config: solve options must be positive");
  }
  const BVPResult result = solve_bvp(bvp);
  json report = {{"version", kSchemaVersion}, {"command", "solve"}};
  if (const auto* s = std::get_if<DiskSolution>(&result)) {
    out << "solved: interior residual " << num(s->interior_residual) << ", boundary residual "
        << num(s->boundary_residual) << ", kernel dimension " << s->kernel_projection.size() << "\n";
    json samples = json::array();
    for (int j = 0; j < 16; ++j) {
      const double t = kTwoPi * j / 16.0;
      samples.push_back({{"theta", t}, {"value", to_json(s->evaluate(std::polar(1.0, t)))}});
    }
    report["status"] = "solved";
    report["interior_residual"] = s->interior_residual;
    report["boundary_residual"] = s->boundary_residual;
    report["normalized_residual"] = s->normalized_residual;
    report["holomorphic"] = to_json(s->holomorphic);
    report["kernel_projection"] = to_json(RVector(s->kernel_projection));
    report["boundary_samples"] = samples;
  } else {
    const auto& o = std::get<Obstructed>(result);
    out << "obstructed: cokernel dimension " << o.dimension << ", normalized residual " << num(o.normalized_residual)
        << "\n";
    json functionals = json::array();
    for (const auto& f : o.functionals) functionals.push_back(to_json(f));
    report["status"] = "obstructed";
    report["dimension"] = o.dimension;
    report["normalized_residual"] = o.normalized_residual;
    report["pairings"] = to_json(RVector(o.pairings));
    report["functionals"] = functionals;
  }
  emit(cfg, report, out);
  return kOk;
}

int cmd_plane_curve(const RunConfig& cfg, std::ostream& out) {
  int first = 1, last = 12;
  if (!cfg.input.empty()) {
    const json doc = load_config(cfg);
    first = doc.value("first", first);
    last = doc.value("last", last);
  }
  if (cfg.degrees) std::tie(first, last) = *cfg.degrees;
  if (first < 1 || last < first) throw InvalidInput("config: degree range must satisfy 1 <= first <= last");
  const std::string csv = plane_curve_csv(first, last);
  for (int d = first; d <= last; ++d) {
    const auto two = plane_curve_double({d, CurveComponents::two});
    const auto one = plane_curve_double({d, CurveComponents::one});
    out << "d=" << d << "  two-component " << two.moduli_dim << "  connected " << one.moduli_dim
        << (one.realizable ? "" : " (no smooth real curve)") << "\n";
  }
  if (cfg.output.empty()) {
    out << csv;
  } else {
    write_text_file(cfg.output, csv);
  }
  write_plot(cfg, csv);
  return kOk;
}

NewtonOptions newton_with_overrides(const RunConfig& cfg, NewtonOptions o) {
  if (cfg.truncation) o.truncation = *cfg.truncation;
  if (cfg.tolerance) o.acceptance = *cfg.tolerance;
  return o;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const json doc = load_config(cfg);
  if (cfg.output.empty()) throw InvalidInput("config: sweep needs --output <directory>");
  const int m = doc.value("m", 1);
  if (m < 1) throw InvalidInput("config: m must be >= 1");
  const PerturbationSpec p = perturbation_from_json(doc.value("perturbation", json::object()), m);
  const GridSpec grid = grid_from_json(doc.value("grid", json::object()));
  SweepOptions opts;
  opts.newton = newton_with_overrides(cfg, newton_from_json(doc.value("newton", json::object())));
  opts.threads = doc.value("threads", 0u);
  opts.measure_tangent = doc.value("measure_tangent", true);
  const ModuliChart chart = sweep_moduli(grid, p, opts);
  save_chart(chart, cfg.output);
  int tangent_min = 1 << 30, tangent_max = -1, iter_max = 0;
  double residual_max = 0.0;
  for (const auto& n : chart.nodes) {
    if (!n.converged) continue;
    tangent_min = std::min(tangent_min, n.tangent_dim);
    tangent_max = std::max(tangent_max, n.tangent_dim);
    iter_max = std::max(iter_max, n.iterations);
    residual_max = std::max(residual_max, n.residual);
  }
  out << "sweep: " << chart.nodes.size() - chart.failed.size() << "/" << chart.nodes.size()
      << " nodes converged, max residual " << num(residual_max) << ", max iterations " << iter_max;
  if (tangent_max >= 0) out << ", tangent dimension " << tangent_min << ".." << tangent_max;
  out << "\n";
  write_plot(cfg, chart_csv(chart));
  if (chart.partial) {
    for (int i : chart.failed) {
      out << "node " << i << ": " << chart.nodes[static_cast<std::size_t>(i)].message << "\n";
    }
    throw NumericalFailure("sweep: " + std::to_string(chart.failed.size()) +
                           " node(s) did not reach the acceptance residual " + num(opts.newton.acceptance) +
                           "; partial chart written to " + cfg.output);
  }
  return kOk;
}

ModuliChart chart_from(const RunConfig& cfg, json* doc_out) {
  if (cfg.input.empty()) throw InvalidInput("config: --input is required for '" + cfg.command + "'");
  if (fs::is_directory(cfg.input)) {
    if (doc_out) *doc_out = json::object();
    return load_chart(cfg.input);
  }
  json doc = load_config(cfg);
  if (!doc.contains("chart")) throw InvalidInput("config: missing field \"chart\" (chart directory)");
  const fs::path dir = relative_to_input(cfg, doc.at("chart").get<std::string>());
  if (!fs::is_directory(dir)) throw InvalidInput("config: chart directory does not exist: " + dir.string());
  if (doc_out) *doc_out = doc;
  return load_chart(dir);
}

int cmd_incidence(const RunConfig& cfg, std::ostream& out) {
  json doc;
  const ModuliChart chart = chart_from(cfg, &doc);
  if (!doc.contains("x")) throw InvalidInput("config: missing field \"x\" (point of the real slice)");
  const RVector x = rvector_from_json(doc.at("x"));
  IncidenceOptions opts;
  opts.threshold = doc.value("threshold", 0.0);
  opts.boundary_samples = doc.value("boundary_samples", opts.boundary_samples);
  opts.newton = newton_with_overrides(cfg, doc.contains("newton") ? newton_from_json(doc.at("newton")) : chart.options);
  const IncidenceFamily fam = incidence_family(x, chart, opts);
  double dev = 0.0, res = 0.0;
  for (const auto& mem : fam.members) {
    dev = std::max(dev, mem.deviation);
    res = std::max(res, mem.residual);
  }
  out << "incidence: " << fam.members.size() << " member(s), threshold " << num(fam.threshold)
      << ", max residual " << num(res) << ", max deviation " << num(dev) << "\n";
  json report = {{"version", kSchemaVersion}, {"command", "incidence"}, {"family", to_json(fam)}};
  emit(cfg, report, out);
  write_plot(cfg, incidence_csv(fam, chart.m));
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  json doc;
  const ModuliChart chart = chart_from(cfg, &doc);
  double tol = doc.value("tolerance", 1e-10);
  if (cfg.tolerance) tol = *cfg.tolerance;
  if (!(tol > 0)) throw InvalidInput("config: tolerance must be positive");
  const UnperturbedDiagnostics d = verify_unperturbed(chart, tol);
  out << "verify: " << (d.passed ? "passed" : "FAILED") << ", max coefficient deviation "
      << num(d.max_coefficient_deviation) << ", max quadric defect " << num(d.max_quadric_defect) << "\n";
  json report = {{"version", kSchemaVersion}, {"command", "verify"}, {"diagnostics", to_json(d)}};
  emit(cfg, report, out);
  if (!d.passed) {
    std::string msg = "verify: unperturbed chart check failed at tolerance " + num(tol);
    for (const auto& f : d.failures) msg += "\n  " + f;
    throw InvariantViolation(msg);
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.tolerance && !(*config.tolerance > 0.0)) throw InvalidInput("config: --tol must be positive");
    if (config.truncation && *config.truncation < 1) throw InvalidInput("config: --truncation must be positive");
    const std::string& c = config.command;
    if (c == "indices") return cmd_indices(config, out);
    if (c == "double") return cmd_double(config, out);
    if (c == "solve") return cmd_solve(config, out);
    if (c == "plane-curve") return cmd_plane_curve(config, out);
    if (c == "sweep") return cmd_sweep(config, out);
    if (c == "incidence") return cmd_incidence(config, out);
    if (c == "verify") return cmd_verify(config, out);
    err << "error: unknown command '" << c << "'\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "invariant violation: unexpected internal error: " << e.what() << "\n";
    return kInvariantViolation;
  }
}

std::string scan_csv(const PartialIndexReport& report) {
  std::vector<ScanRow> rows = report.scan;
  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) { return a.shift < b.shift; });
  std::ostringstream s;
  s << "m,N,second_difference,degree,rows,cols,sigma_max,smallest_kept,largest_dropped,truncation_binds\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ScanRow& r = rows[i];
    s << r.shift << "," << r.dimension << ",";
    if (i > 0 && i + 1 < rows.size() && rows[i - 1].shift == r.shift - 1 && rows[i + 1].shift == r.shift + 1) {
      s << rows[i - 1].dimension - 2 * r.dimension + rows[i + 1].dimension;
    }
    s << "," << r.degree << "," << r.rows << "," << r.cols << "," << num(r.sigma_max) << "," << num(r.smallest_kept)
      << "," << num(r.largest_dropped) << "," << (r.truncation_binds ? 1 : 0) << "\n";
  }
  return s.str();
}

std::string chart_csv(const ModuliChart& chart) {
  const int n = chart.m + 2;
  const int nc = coordinate_count(chart.m);
  std::ostringstream s;
  s << "index,converged";
  for (int i = 0; i < n; ++i) s << ",u" << i;
  for (int i = 0; i < n; ++i) s << ",v" << i;
  s << ",iterations,total_iterations,residual,tangent_dim,quadric_re,quadric_im,coefficient_norm";
  for (int i = 0; i < nc; ++i) s << ",coord" << i;
  s << "\n";
  for (const auto& node : chart.nodes) {
    s << node.index << "," << (node.converged ? 1 : 0);
    for (int i = 0; i < n; ++i) s << "," << num(node.u(i));
    for (int i = 0; i < n; ++i) s << "," << num(node.v(i));
    s << "," << node.iterations << "," << node.total_iterations << "," << num(node.residual) << "," << node.tangent_dim;
    if (node.converged && node.disk) {
      s << "," << num(node.quadric.parameter.real()) << "," << num(node.quadric.parameter.imag()) << ","
        << num(node.disk->coefficient_norm());
      for (int i = 0; i < nc; ++i) s << "," << (i < node.coordinates.size() ? num(node.coordinates(i)) : "");
    } else {
      s << ",,,";
      for (int i = 0; i < nc; ++i) s << ",";
    }
    s << "\n";
  }
  return s.str();
}

std::string incidence_csv(const IncidenceFamily& family, int m) {
  const int nc = coordinate_count(m);
  std::ostringstream s;
  s << "member,node,theta_y,coarse_distance,residual,deviation";
  for (int i = 0; i < nc; ++i) s << ",coord" << i;
  s << "\n";
  auto row = [&](std::size_t k) {
    const auto& mem = family.members[k];
    s << k << "," << mem.node << "," << num(mem.theta) << "," << num(mem.coarse_distance) << "," << num(mem.residual)
      << "," << num(mem.deviation);
    for (int i = 0; i < nc; ++i) s << "," << (i < mem.coordinates.size() ? num(mem.coordinates(i)) : "");
    s << "\n";
  };
  for (std::size_t k = 0; k < family.members.size(); ++k) row(k);
  // m = 1 members are ordered around x; repeating the first closes the polyline.
  if (m == 1 && family.members.size() > 2) row(0);
  return s.str();
}

std::string plane_curve_csv(int first, int last) {
  std::ostringstream s;
  s << "d,two_component_dim,connected_dim,genus_x,genus_double,two_component_h1,connected_h1,"
       "two_component_deg_k_minus_n,connected_deg_k_minus_n,connected_realizable\n";
  for (int d = first; d <= last; ++d) {
    const auto two = plane_curve_double({d, CurveComponents::two});
    const auto one = plane_curve_double({d, CurveComponents::one});
    s << d << "," << two.moduli_dim << "," << one.moduli_dim << "," << two.genus_x << "," << one.genus_double << ","
      << two.h1 << "," << one.h1 << "," << two.deg_k_minus_n << "," << one.deg_k_minus_n << ","
      << (one.realizable ? 1 : 0) << "\n";
  }
  return s.str();
}

std::string emit_plot_data(const PlotSource& source, const std::string& kind) {
  if (kind == "scan") {
    if (const auto* r = std::get_if<const PartialIndexReport*>(&source); r && *r) return scan_csv(**r);
  } else if (kind == "chart") {
    if (const auto* c = std::get_if<const ModuliChart*>(&source); c && *c) return chart_csv(**c);
  } else if (kind == "incidence") {
    if (const auto* f = std::get_if<const IncidenceFamily*>(&source); f && *f) {
      const int m = (*f)->x.size() >= 3 ? static_cast<int>((*f)->x.size()) - 2 : 1;
      return incidence_csv(**f, m);
    }
  } else {
    throw InvalidInput("plot: unknown kind '" + kind + "' (scan, chart, incidence)");
  }
  throw InvalidInput("plot: kind '" + kind + "' does not match the supplied result");
}

}  // namespace holodisk::cli
