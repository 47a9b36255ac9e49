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

//
// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "holodisk/boundary.hpp"
#include "holodisk/dbar.hpp"
#include "holodisk/doubling.hpp"
#include "holodisk/errors.hpp"
#include "holodisk/moduli.hpp"
#include "support.hpp"

using namespace holodisk;
namespace ht = holodisk::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<std::vector<int>> all_diagonal_tuples() {
  std::vector<std::vector<int>> out;
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> js(static_cast<std::size_t>(n), -3);
    while (true) {
      out.push_back(js);
      std::size_t i = 0;
      while (i < js.size() && js[i] == 3) js[i++] = -3;
      if (i == js.size()) break;
      ++js[i];
    }
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  IndexOptions o;
  o.truncation = 64;
  int bad = 0, total = 0;
  std::string first_bad;
  for (const auto& js : all_diagonal_tuples()) {
    ++total;
    auto want = js;
    std::sort(want.begin(), want.end());
    const auto r = partial_indices(ht::diagonal_gloop(js), o);
    if (r.indices != want) {
      if (!bad++) first_bad = std::to_string(total);
    }
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 30.0, std::to_string(total) + " diagonal loops, " + std::to_string(bad) + " mismatches, " +
                                    fmt(t) + " s (limit 30 s)"};
}

Outcome criterion2() {
  ht::Rng rng(20260002);
  int bad = 0;
  std::uniform_int_distribution<int> nd(1, 3), dd(1, 2);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = nd(rng);
    const auto js = ht::random_indices(rng, n, -3, 3);
    const GLoop g = ht::diagonal_gloop(js);
    const GLoop h = ht::conjugate_by(g, ht::random_disk_unit(rng, n, dd(rng), 0.3));
    if (partial_indices(g).indices != partial_indices(h).indices) ++bad;
  }
  return {bad == 0, "25 conjugated loops, " + std::to_string(bad) + " multiset changes"};
}

Outcome criterion3() {
  ht::Rng rng(20260003);
  int bad = 0;
  std::uniform_int_distribution<int> nd(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = nd(rng);
    const auto c = ht::random_condition(rng, n, -3, 3, 0.3, 1 + trial % 2);
    if (numerical_index(c.g) != maslov_index(c.g) + n) ++bad;
  }
  return {bad == 0, "50 random loops, " + std::to_string(bad) + " violations of index = maslov + n"};
}

Outcome criterion4() {
  int bad = 0, total = 0;
  const DiskGrid grid = DiskGrid::make(8, 16);
  for (const auto& js : all_diagonal_tuples()) {
    ++total;
    const GLoop g = ht::diagonal_gloop(js);
    const auto n = static_cast<Eigen::Index>(js.size());
    int want_ker = 0, want_cert = 0;
    for (int j : js) {
      want_ker += std::max(j + 1, 0);
      want_cert += std::max(-j - 1, 0);
    }
    const int ker = kernel_basis(g).dimension();
    LinearBVP p;
    p.condition = g;
    p.rhs = RHSForm::sample(grid, n, [n](Complex z) {
      CVector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(1.0 + 0.3 * static_cast<double>(i), 0.7) + z * std::conj(z) + 0.4 * z;
      return v;
    });
    const auto res = solve_bvp(p);
    const int cert = std::holds_alternative<Obstructed>(res) ? std::get<Obstructed>(res).dimension : 0;
    if (ker != want_ker || cert != want_cert) ++bad;
  }
  return {bad == 0, std::to_string(total) + " diagonal loops, " + std::to_string(bad) + " kernel/certificate mismatches"};
}

Outcome criterion5() {
  int bad = 0;
  for (int d = 1; d <= 12; ++d) {
    const auto two = plane_curve_double({d, CurveComponents::two});
    const auto one = plane_curve_double({d, CurveComponents::one});
    const bool ok = two.moduli_dim == d * (d + 3) / 2 && one.moduli_dim == d * (d + 3) && two.h1 == 0 &&
                    one.h1 == 0 && two.deg_k_minus_n < 0 && one.deg_k_minus_n < 0;
    if (!ok) ++bad;
  }
  const bool cubic = plane_curve_double({3, CurveComponents::two}).moduli_dim == 9 &&
                     plane_curve_double({3, CurveComponents::one}).moduli_dim == 18;
  return {bad == 0 && cubic, "d = 1..12, " + std::to_string(bad) + " bad rows; d = 3 gives 9 and 18"};
}

Outcome criterion6() {
  GridSpec grid;
  grid.longitude = 16;
  grid.latitude = 8;
  const ModuliChart chart = sweep_moduli(grid, PerturbationSpec::cubic_harmonic(1, 0.0));
  const auto d = verify_unperturbed(chart, 1e-10);
  double dev = 0.0;
  std::size_t members = 0;
  ht::Rng rng(20260006);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 3; ++trial) {
    RVector x(3);
    x << nd(rng), nd(rng), nd(rng);
    x.normalize();
    const auto fam = incidence_family(x, chart);
    members = members == 0 ? fam.members.size() : std::min(members, fam.members.size());
    for (const auto& m : fam.members) dev = std::max(dev, m.deviation);
  }
  const bool ok = !chart.partial && d.passed && d.max_coefficient_deviation <= 1e-10 && d.max_quadric_defect <= 1e-10 &&
                  dev < 1e-6 && members > 0;
  return {ok, "128 nodes, half-line deviation " + fmt(d.max_coefficient_deviation) + ", conic defect " +
                  fmt(d.max_quadric_defect) + ", incidence deviation " + fmt(dev) + " (min " + std::to_string(members) +
                  " members)"};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  GridSpec grid;
  grid.kind = GridKind::sphere_pair;
  grid.longitude = 4;
  grid.latitude = 4;
  const ModuliChart chart = sweep_moduli(grid, PerturbationSpec::cubic_harmonic(2, 0.05));
  int converged = 0, max_it = 0, tangent_bad = 0;
  double max_res = 0.0;
  for (const auto& n : chart.nodes) {
    if (!n.converged) continue;
    ++converged;
    max_it = std::max(max_it, n.iterations);
    max_res = std::max(max_res, n.residual);
    if (n.tangent_dim != 4) ++tangent_bad;
  }
  const double t = seconds_since(t0);
  const bool ok = chart.nodes.size() == 256 && converged == 256 && max_it <= 8 && max_res <= 1e-8 &&
                  tangent_bad == 0 && t < 600.0;
  return {ok, std::to_string(converged) + "/" + std::to_string(chart.nodes.size()) + " converged, max iterations " +
                  std::to_string(max_it) + ", max residual " + fmt(max_res) + ", tangent != 4 at " +
                  std::to_string(tangent_bad) + " nodes, " + fmt(t) + " s"};
}

Outcome criterion8() {
  GridSpec grid;
  const auto base = grid_nodes(grid, 1);
  std::vector<double> dist;
  for (double eps : {1e-3, 5e-3, 1e-2}) {
    const ModuliChart chart = sweep_moduli(grid, PerturbationSpec::cubic_harmonic(1, eps), {{}, 0, false});
    if (chart.partial) return {false, "sweep at eps " + fmt(eps) + " did not converge"};
    double d = 0.0;
    for (const auto& n : chart.nodes) {
      const DiskMap h = standard_half_line(n.u, n.v, n.disk->truncation());
      d = std::max(d, std::sqrt((n.disk->a - h.a).squaredNorm() + (n.disk->b - h.b).squaredNorm()));
    }
    dist.push_back(d);
  }
  const double r1 = (dist[1] / 5e-3) / (dist[0] / 1e-3), r2 = (dist[2] / 1e-2) / (dist[0] / 1e-3);
  const bool ok = std::abs(r1 - 1.0) < 0.2 && std::abs(r2 - 1.0) < 0.2 && dist[0] <= 1e-2;
  return {ok, "distances " + fmt(dist[0]) + ", " + fmt(dist[1]) + ", " + fmt(dist[2]) + "; normalized ratios " +
                  fmt(r1) + ", " + fmt(r2) + " (limit 20%)"};
}

Outcome criterion9() {
  ht::Rng rng(20260009);
  std::uniform_int_distribution<int> nd(1, 3);
  double interior = 0.0, boundary = 0.0, projection = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = nd(rng);
    const auto c = ht::random_condition(rng, n, -1, 2);
    const auto kb = kernel_basis(c.g);
    const auto man = ht::random_manufactured(rng, kb, n, 3);
    LinearBVP p;
    p.condition = c.g;
    p.rhs = RHSForm::sample(DiskGrid::make(24, 96), n, [&](Complex z) { return man.density(z); });
    const auto res = solve_bvp(p);
    if (!std::holds_alternative<DiskSolution>(res)) {
      ++failures;
      continue;
    }
    const auto& s = std::get<DiskSolution>(res);
    interior = std::max(interior, s.interior_residual);
    boundary = std::max(boundary, s.boundary_residual);
    projection = std::max(projection, ht::kernel_span_residual(
                                          [&](Complex z) { return CVector(man.value(z) - s.evaluate(z)); }, kb.basis, n));
  }
  const bool ok = failures == 0 && interior <= 1e-8 && boundary <= 1e-8 && projection <= 1e-8;
  return {ok, "10 problems, interior " + fmt(interior) + ", boundary " + fmt(boundary) + ", kernel projection " +
                  fmt(projection) + (failures ? ", " + std::to_string(failures) + " obstructed" : "")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 partial-index oracle", criterion1},       {"2 conjugation invariance", criterion2},
      {"3 index theorem", criterion3},              {"4 kernel and certificate dimensions", criterion4},
      {"5 plane-curve table", criterion5},          {"6 unperturbed m=1 sweep", criterion6},
      {"7 perturbed m=2 sweep", criterion7},        {"8 epsilon continuity", criterion8},
      {"9 manufactured dbar problems", criterion9},
  };
  std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name.substr(0, name.find(' ')) != only) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << " [" << fmt(seconds_since(t0))
              << " s]" << std::endl;
  }
  return failed ? 1 : 0;
}
