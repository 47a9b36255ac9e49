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

#include "holodisk/cli/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "holodisk/cli/commands.hpp"
#include "holodisk/errors.hpp"

namespace holodisk::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("config: missing field \"") + key + "\"");
  return j.at(key);
}

std::string node_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "node_%05d.json", index);
  return buf;
}

}  // namespace

void check_version(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("config: document must be a JSON object");
  if (!doc.contains("version")) throw InvalidInput("config: missing \"version\" (expected 1)");
  if (doc.at("version").get<int>() != kSchemaVersion) {
    throw InvalidInput("config: unsupported schema version " + doc.at("version").dump() + " (expected 1)");
  }
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
  throw InvalidInput("config: complex numbers are [re, im] arrays, got " + j.dump());
}

json to_json(const RVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVector rvector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("config: expected an array of reals");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
  return v;
}

json to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

FourierLoop loop_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(get_or<int>(j, "rows", 1));
  const auto cols = static_cast<Eigen::Index>(get_or<int>(j, "cols", static_cast<int>(rows)));
  const json& terms = require(j, "terms");
  if (!terms.is_array()) throw InvalidInput("loop: \"terms\" must be an array");
  int order = 0;
  for (const auto& t : terms) order = std::max(order, std::abs(require(t, "frequency").get<int>()));
  FourierLoop l(rows, cols, order);
  for (const auto& t : terms) {
    const int k = t.at("frequency").get<int>();
    CMatrix c = CMatrix::Zero(rows, cols);
    if (t.contains("value")) {
      if (rows != 1 || cols != 1) throw InvalidInput("loop: \"value\" is only valid for scalar loops");
      c(0, 0) = complex_from_json(t.at("value"));
    } else {
      const json& m = require(t, "matrix");
      if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != rows) throw InvalidInput("loop: matrix row count mismatch");
      for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = m.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
          throw InvalidInput("loop: matrix column count mismatch");
        }
        for (Eigen::Index s = 0; s < cols; ++s) c(r, s) = complex_from_json(row.at(static_cast<std::size_t>(s)));
      }
    }
    if (!c.allFinite()) throw InvalidInput("loop: non-finite coefficient");
    l.coeff(k) += c;
  }
  return l;
}

json to_json(const FourierLoop& l) {
  json terms = json::array();
  for (int k = -l.order(); k <= l.order(); ++k) {
    const CMatrix& c = l.coeff(k);
    if (c.norm() == 0.0) continue;
    json m = json::array();
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index s = 0; s < c.cols(); ++s) row.push_back(to_json(c(r, s)));
      m.push_back(row);
    }
    terms.push_back({{"frequency", k}, {"matrix", m}});
  }
  return {{"rows", l.rows()}, {"cols", l.cols()}, {"terms", terms}};
}

GLoop condition_from_json(const json& j) {
  if (j.contains("gloop")) return GLoop(loop_from_json(j.at("gloop")));
  if (j.contains("frame")) return frame_to_gloop(BoundaryFrame::from_loop(loop_from_json(j.at("frame"))));
  if (j.contains("diagonal")) {
    const auto js = j.at("diagonal").get<std::vector<int>>();
    if (js.empty()) throw InvalidInput("condition: empty diagonal");
    return GLoop(FourierLoop::diagonal_monomials(js));
  }
  throw InvalidInput("condition: expected one of \"gloop\", \"frame\", \"diagonal\"");
}

json to_json(const TaylorDisk& f) {
  json coeffs = json::array();
  for (int k = 0; k <= f.degree(); ++k) coeffs.push_back(to_json(f.coeff(k)));
  return {{"dim", f.dim()}, {"degree", f.degree()}, {"coefficients", coeffs}};
}

json to_json(const PartialIndexReport& r) {
  json scan = json::array();
  for (const auto& row : r.scan) {
    scan.push_back({{"shift", row.shift},
                    {"dimension", row.dimension},
                    {"degree", row.degree},
                    {"rows", row.rows},
                    {"cols", row.cols},
                    {"sigma_max", row.sigma_max},
                    {"smallest_kept", row.smallest_kept},
                    {"largest_dropped", row.largest_dropped},
                    {"truncation_binds", row.truncation_binds}});
  }
  return {{"indices", r.indices}, {"maslov", r.maslov}, {"regular", r.regular}, {"h0", r.h0},
          {"h1", r.h1},           {"truncation", r.truncation}, {"tau", r.tau}, {"scan", scan}};
}

json to_json(const DoubleReport& r) {
  return {{"genus", r.genus}, {"splitting", r.splitting}, {"degree", r.degree}, {"h0", r.h0},
          {"h1", r.h1},       {"h0_rho", r.h0_rho},       {"h1_rho", r.h1_rho}};
}

json to_json(const PlaneCurveReport& r) {
  return {{"degree", r.degree},
          {"components", to_string(r.components)},
          {"genus_x", r.genus_x},
          {"double", to_string(r.double_kind)},
          {"genus_double", r.genus_double},
          {"deg_n", r.deg_n},
          {"deg_k_minus_n", r.deg_k_minus_n},
          {"h0", r.h0},
          {"h1", r.h1},
          {"moduli_dim", r.moduli_dim},
          {"realizable", r.realizable}};
}

RHSForm rhs_from_json(const json& j, Eigen::Index dim) {
  const json& g = require(j, "grid");
  const DiskGrid grid = DiskGrid::make(require(g, "radial").get<int>(), require(g, "angular").get<int>());
  struct Term {
    int component, p, q;
    Complex c;
  };
  std::vector<Term> terms;
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      Term term{require(t, "component").get<int>(), get_or<int>(t, "z_power", 0), get_or<int>(t, "zbar_power", 0),
                complex_from_json(require(t, "coeff"))};
      if (term.component < 0 || term.component >= dim) throw InvalidInput("rhs: term component out of range");
      if (term.p < 0 || term.q < 0) throw InvalidInput("rhs: negative power");
      terms.push_back(term);
    }
  }
  return RHSForm::sample(grid, dim, [&](Complex z) {
    CVector v = CVector::Zero(dim);
    for (const auto& t : terms) v(t.component) += t.c * std::pow(z, t.p) * std::pow(std::conj(z), t.q);
    return v;
  });
}

PerturbationSpec perturbation_from_json(const json& j, int m) {
  const double eps = get_or<double>(j, "epsilon", 0.0);
  const std::string preset = get_or<std::string>(j, "preset", "");
  if (preset == "cubic_harmonic") return PerturbationSpec::cubic_harmonic(m, eps);
  if (!preset.empty()) throw InvalidInput("perturbation: unknown preset \"" + preset + "\"");
  PerturbationSpec p;
  p.m = m;
  p.epsilon = eps;
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      PerturbationTerm term;
      term.component = require(t, "component").get<int>();
      term.powers = require(t, "powers").get<std::vector<int>>();
      term.coeff = require(t, "coeff").get<double>();
      p.terms.push_back(term);
    }
  }
  p.validate();
  return p;
}

json to_json(const PerturbationSpec& p) {
  json terms = json::array();
  for (const auto& t : p.terms) terms.push_back({{"component", t.component}, {"powers", t.powers}, {"coeff", t.coeff}});
  return {{"epsilon", p.epsilon}, {"terms", terms}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  const std::string kind = get_or<std::string>(j, "kind", "sphere");
  if (kind == "sphere") {
    g.kind = GridKind::sphere;
    g.longitude = get_or<int>(j, "longitude", 16);
    g.latitude = get_or<int>(j, "latitude", 8);
  } else if (kind == "sphere_pair") {
    g.kind = GridKind::sphere_pair;
    g.longitude = get_or<int>(j, "longitude", 4);
    g.latitude = get_or<int>(j, "latitude", 4);
  } else if (kind == "nodes") {
    g.kind = GridKind::nodes;
    for (const auto& n : require(j, "nodes")) {
      g.nodes.emplace_back(rvector_from_json(require(n, "u")), rvector_from_json(require(n, "v")));
    }
  } else {
    throw InvalidInput("grid: unknown kind \"" + kind + "\" (sphere, sphere_pair, nodes)");
  }
  if (g.kind != GridKind::nodes && (g.longitude < 1 || g.latitude < 1)) throw InvalidInput("grid: sizes must be positive");
  return g;
}

json to_json(const GridSpec& g) {
  switch (g.kind) {
    case GridKind::sphere:
      return {{"kind", "sphere"}, {"longitude", g.longitude}, {"latitude", g.latitude}};
    case GridKind::sphere_pair:
      return {{"kind", "sphere_pair"}, {"longitude", g.longitude}, {"latitude", g.latitude}};
    case GridKind::nodes: {
      json nodes = json::array();
      for (const auto& [u, v] : g.nodes) nodes.push_back({{"u", to_json(u)}, {"v", to_json(v)}});
      return {{"kind", "nodes"}, {"nodes", nodes}};
    }
  }
  return {};
}

NewtonOptions newton_from_json(const json& j) {
  NewtonOptions o;
  o.truncation = get_or<int>(j, "truncation", o.truncation);
  o.collocation = get_or<int>(j, "collocation", o.collocation);
  o.tolerance = get_or<double>(j, "tolerance", o.tolerance);
  o.acceptance = get_or<double>(j, "acceptance", o.acceptance);
  o.max_iterations = get_or<int>(j, "max_iterations", o.max_iterations);
  o.continuation_steps = get_or<int>(j, "continuation_steps", o.continuation_steps);
  o.tau = get_or<double>(j, "tau", o.tau);
  if (o.truncation < 1 || !(o.tolerance > 0) || !(o.acceptance > 0) || o.max_iterations < 0 || !(o.tau > 0)) {
    throw InvalidInput("newton: options must be positive");
  }
  return o;
}

json to_json(const NewtonOptions& o) {
  return {{"truncation", o.truncation},         {"collocation", o.collocation},
          {"tolerance", o.tolerance},           {"acceptance", o.acceptance},
          {"max_iterations", o.max_iterations}, {"continuation_steps", o.continuation_steps},
          {"tau", o.tau}};
}

json to_json(const ChartNode& node) {
  json j = {{"index", node.index},
            {"u", to_json(node.u)},
            {"v", to_json(node.v)},
            {"converged", node.converged},
            {"message", node.message},
            {"iterations", node.iterations},
            {"total_iterations", node.total_iterations},
            {"residual", node.residual},
            {"tangent_dim", node.tangent_dim}};
  if (node.converged && node.disk) {
    j["quadric"] = {{"parameter", to_json(node.quadric.parameter)}, {"point", to_json(node.quadric.point)}};
    j["coordinates"] = to_json(node.coordinates);
    json a = json::array();
    json b = json::array();
    for (int k = 0; k <= node.disk->truncation(); ++k) {
      a.push_back(to_json(node.disk->a(k)));
      json row = json::array();
      for (int c = 0; c < node.disk->m; ++c) row.push_back(to_json(node.disk->b(k, c)));
      b.push_back(row);
    }
    j["disk"] = {{"truncation", node.disk->truncation()}, {"a", a}, {"b", b}};
  }
  return j;
}

ChartNode chart_node_from_json(const json& j, int m) {
  ChartNode node;
  node.index = require(j, "index").get<int>();
  node.u = rvector_from_json(require(j, "u"));
  node.v = rvector_from_json(require(j, "v"));
  if (node.u.size() != m + 2 || node.v.size() != m + 2) throw InvalidInput("chart node: dimension differs from m + 2");
  node.converged = require(j, "converged").get<bool>();
  node.message = get_or<std::string>(j, "message", "");
  node.iterations = get_or<int>(j, "iterations", 0);
  node.total_iterations = get_or<int>(j, "total_iterations", 0);
  node.residual = get_or<double>(j, "residual", 0.0);
  node.tangent_dim = get_or<int>(j, "tangent_dim", -1);
  if (node.converged) {
    const json& d = require(j, "disk");
    const int K = require(d, "truncation").get<int>();
    DiskMap disk = standard_half_line(node.u, node.v, K);
    const json& a = require(d, "a");
    const json& b = require(d, "b");
    if (static_cast<int>(a.size()) != K + 1 || static_cast<int>(b.size()) != K + 1) {
      throw InvalidInput("chart node: coefficient count differs from truncation + 1");
    }
    for (int k = 0; k <= K; ++k) {
      disk.a(k) = complex_from_json(a.at(static_cast<std::size_t>(k)));
      for (int c = 0; c < m; ++c) {
        disk.b(k, c) = complex_from_json(b.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(c)));
      }
    }
    const json& q = require(j, "quadric");
    node.quadric.parameter = complex_from_json(require(q, "parameter"));
    const json& pt = require(q, "point");
    node.quadric.point.resize(static_cast<Eigen::Index>(pt.size()));
    for (std::size_t i = 0; i < pt.size(); ++i) node.quadric.point(static_cast<Eigen::Index>(i)) = complex_from_json(pt.at(i));
    node.coordinates = rvector_from_json(require(j, "coordinates"));
    node.disk = std::move(disk);
  }
  return node;
}

void save_chart(const ModuliChart& chart, const fs::path& dir) {
  fs::create_directories(dir / "nodes");
  json header = {{"version", kSchemaVersion},
                 {"m", chart.m},
                 {"perturbation", to_json(chart.perturbation)},
                 {"grid", to_json(chart.grid)},
                 {"newton", to_json(chart.options)},
                 {"node_count", chart.nodes.size()},
                 {"partial", chart.partial},
                 {"failed", chart.failed}};
  write_text_file(dir / "chart.json", header.dump(2) + "\n");
  for (const auto& node : chart.nodes) {
    json j = to_json(node);
    j["version"] = kSchemaVersion;
    write_text_file(dir / "nodes" / node_file_name(node.index), j.dump(2) + "\n");
  }
  write_text_file(dir / "summary.csv", chart_csv(chart));
}

ModuliChart load_chart(const fs::path& dir) {
  const json header = read_json_file(dir / "chart.json");
  check_version(header);
  ModuliChart chart;
  chart.m = require(header, "m").get<int>();
  chart.perturbation = perturbation_from_json(require(header, "perturbation"), chart.m);
  chart.grid = grid_from_json(require(header, "grid"));
  chart.options = newton_from_json(require(header, "newton"));
  chart.partial = get_or<bool>(header, "partial", false);
  chart.failed = get_or<std::vector<int>>(header, "failed", {});
  const auto count = require(header, "node_count").get<std::size_t>();
  for (std::size_t i = 0; i < count; ++i) {
    const json j = read_json_file(dir / "nodes" / node_file_name(static_cast<int>(i)));
    chart.nodes.push_back(chart_node_from_json(j, chart.m));
  }
  return chart;
}

json to_json(const IncidenceFamily& fam) {
  json members = json::array();
  for (const auto& m : fam.members) {
    members.push_back({{"node", m.node},
                       {"theta_y", m.theta},
                       {"coarse_distance", m.coarse_distance},
                       {"residual", m.residual},
                       {"deviation", m.deviation},
                       {"coordinates", to_json(m.coordinates)}});
  }
  return {{"x", to_json(fam.x)}, {"y", to_json(fam.y)}, {"threshold", fam.threshold}, {"members", members}};
}

json to_json(const UnperturbedDiagnostics& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) {
    nodes.push_back({{"index", n.index},
                     {"coefficient_deviation", n.coefficient_deviation},
                     {"quadric_defect", n.quadric_defect},
                     {"ok", n.ok}});
  }
  return {{"passed", d.passed},
          {"max_coefficient_deviation", d.max_coefficient_deviation},
          {"max_quadric_defect", d.max_quadric_defect},
          {"min_pairwise_distance", d.min_pairwise_distance},
          {"min_antipodal_distance", d.min_antipodal_distance},
          {"failures", d.failures},
          {"nodes", nodes}};
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

}  // namespace holodisk::cli
