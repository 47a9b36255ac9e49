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

#include "holodisk/moduli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "holodisk/boundary.hpp"
#include "holodisk/errors.hpp"

namespace holodisk {

namespace {

Eigen::Vector3d sphere_point(int i, int j, int longitude, int latitude) {
  const double phi = kTwoPi * i / longitude;
  const double polar = kPi * (j + 0.5) / latitude;
  return {std::sin(polar) * std::cos(phi), std::sin(polar) * std::sin(phi), std::cos(polar)};
}

std::pair<RVector, RVector> plane_with_normal(const Eigen::Vector3d& n) {
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e(axis) = 1.0;
  const Eigen::Vector3d u = (e - e.dot(n) * n).normalized();
  const Eigen::Vector3d v = n.cross(u);
  return {RVector(u), RVector(v)};
}

// Orthonormal oriented pair spanning Re c, Im c.
std::pair<RVector, RVector> plane_of(const CVector& c) {
  RVector e1 = c.real();
  RVector e2 = c.imag();
  const double n1 = e1.norm();
  if (!(n1 > 1e-14)) throw NumericalFailure("moduli_coordinates: degenerate center point");
  e1 /= n1;
  e2 -= e2.dot(e1) * e1;
  const double n2 = e2.norm();
  if (!(n2 > 1e-14)) throw NumericalFailure("moduli_coordinates: center point is real");
  return {e1, e2 / n2};
}

std::array<double, 6> sd_asd(const RVector& e1, const RVector& e2) {
  auto w = [&](int i, int j) { return e1(i) * e2(j) - e1(j) * e2(i); };
  return {w(0, 1) + w(2, 3), w(0, 2) - w(1, 3), w(0, 3) + w(1, 2),
          w(0, 1) - w(2, 3), w(0, 2) + w(1, 3), w(0, 3) - w(1, 2)};
}

// Real point of RP^{m+1} closest to the straightened boundary point.
RVector real_representative(const CVector& y) {
  Eigen::Index a = 0;
  y.cwiseAbs().maxCoeff(&a);
  RVector r = (y / y(a)).real();
  return r.normalized();
}

double projective_distance(const RVector& r, const RVector& x) { return std::acos(std::min(1.0, std::abs(r.dot(x)))); }

}  // namespace

std::pair<RVector, RVector> plane_from_sd_asd(const Eigen::Vector3d& sd, const Eigen::Vector3d& asd) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 0.5 * (sd(0) + asd(0));
  omega(2, 3) = 0.5 * (sd(0) - asd(0));
  omega(0, 2) = 0.5 * (sd(1) + asd(1));
  omega(1, 3) = 0.5 * (asd(1) - sd(1));
  omega(0, 3) = 0.5 * (sd(2) + asd(2));
  omega(1, 2) = 0.5 * (sd(2) - asd(2));
  omega -= Eigen::Matrix4d(omega.transpose());
  Eigen::Index k = 0;
  omega.colwise().norm().maxCoeff(&k);
  const Eigen::Vector4d p = omega.col(k).normalized();
  Eigen::Vector4d u = omega * p;
  u.normalize();
  Eigen::Vector4d v = p - p.dot(u) * u;
  v.normalize();
  return {RVector(u), RVector(v)};
}

RVector moduli_coordinates(const DiskMap& f) {
  const auto [e1, e2] = plane_of(f.homogeneous().coeff(0));
  if (f.m == 1) {
    const Eigen::Vector3d a = e1, b = e2;
    return RVector(a.cross(b));
  }
  if (f.m == 2) {
    const auto c = sd_asd(e1, e2);
    RVector out(6);
    for (int i = 0; i < 6; ++i) out(i) = c[static_cast<std::size_t>(i)];
    return out;
  }
  RVector out(e1.size() * 2);
  out << e1, e2;
  return out;
}

std::vector<std::pair<RVector, RVector>> grid_nodes(const GridSpec& grid, int m) {
  std::vector<std::pair<RVector, RVector>> out;
  switch (grid.kind) {
    case GridKind::sphere: {
      if (m != 1) throw InvalidInput("grid: the sphere grid parameterizes oriented planes in R^3 (m = 1)");
      if (grid.longitude < 1 || grid.latitude < 1) throw InvalidInput("grid: sizes must be positive");
      for (int i = 0; i < grid.longitude; ++i) {
        for (int j = 0; j < grid.latitude; ++j) out.push_back(plane_with_normal(sphere_point(i, j, grid.longitude, grid.latitude)));
      }
      break;
    }
    case GridKind::sphere_pair: {
      if (m != 2) throw InvalidInput("grid: the sphere-pair grid parameterizes oriented planes in R^4 (m = 2)");
      if (grid.longitude < 1 || grid.latitude < 1) throw InvalidInput("grid: sizes must be positive");
      std::vector<Eigen::Vector3d> factor;
      for (int i = 0; i < grid.longitude; ++i) {
        for (int j = 0; j < grid.latitude; ++j) factor.push_back(sphere_point(i, j, grid.longitude, grid.latitude));
      }
      for (const auto& sd : factor) {
        for (const auto& asd : factor) out.push_back(plane_from_sd_asd(sd, asd));
      }
      break;
    }
    case GridKind::nodes: {
      for (const auto& [u, v] : grid.nodes) {
        if (u.size() != m + 2 || v.size() != m + 2) throw InvalidInput("grid: node dimension differs from m + 2");
        const RVector un = u.normalized();
        const RVector vn = (v - v.dot(un) * un).normalized();
        out.emplace_back(un, vn);
      }
      break;
    }
  }
  return out;
}

double grid_spacing(const GridSpec& grid) {
  if (grid.kind == GridKind::nodes) return 0.5;
  return std::max(kTwoPi / grid.longitude, kPi / grid.latitude);
}

ModuliChart sweep_moduli(const GridSpec& grid, const PerturbationSpec& p, const SweepOptions& options) {
  p.validate();
  const double margin = p.totally_real_margin();
  if (!(margin > 1e-3)) {
    std::ostringstream msg;
    msg << "sweep_moduli: perturbed submanifold is not safely totally real (margin " << margin << ")";
    throw InvalidInput(msg.str());
  }
  const double strength = p.perturbation_strength();
  if (!(strength < 0.5)) {
    std::ostringstream msg;
    msg << "sweep_moduli: perturbation strength " << strength << " is outside the validated range (< 0.5)";
    throw InvalidInput(msg.str());
  }
  ModuliChart chart;
  chart.m = p.m;
  chart.perturbation = p;
  chart.grid = grid;
  chart.options = options.newton;
  const auto nodes = grid_nodes(grid, p.m);
  chart.nodes.resize(nodes.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < nodes.size(); i = next.fetch_add(1)) {
      ChartNode& node = chart.nodes[i];
      node.index = static_cast<int>(i);
      node.u = nodes[i].first;
      node.v = nodes[i].second;
      try {
        NewtonResult r = continue_disk(node.u, node.v, p, options.newton);
        node.iterations = r.iterations;
        node.total_iterations = r.total_iterations;
        node.residual = r.residual;
        node.quadric = quadric_point(r.disk);
        node.coordinates = moduli_coordinates(r.disk);
        if (options.measure_tangent) node.tangent_dim = linearization_dims(r.disk, p, options.newton).after_gauge;
        node.disk = std::move(r.disk);
        node.converged = true;
      } catch (const Error& e) {
        node.converged = false;
        node.message = e.what();
      }
    }
  };
  unsigned threads = options.threads > 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, nodes.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& node : chart.nodes) {
    if (!node.converged) chart.failed.push_back(node.index);
  }
  chart.partial = !chart.failed.empty();
  return chart;
}

// ---------------------------------------------------------------------------
// Incidence

namespace {

struct RefineState {
  DiskMap disk;
  double theta = 0.0;
};

// Parameters: a/b coefficients of degree >= 1 (minus Im a_1), b_j(0), theta.
Eigen::VectorXd refine_pack(const RefineState& s) {
  const int m = s.disk.m;
  const int K = s.disk.truncation();
  std::vector<double> p;
  for (int k = 1; k <= K; ++k) {
    p.push_back(s.disk.a(k).real());
    if (k >= 2) p.push_back(s.disk.a(k).imag());
    for (int j = 0; j < m; ++j) {
      p.push_back(s.disk.b(k, j).real());
      p.push_back(s.disk.b(k, j).imag());
    }
  }
  for (int j = 0; j < m; ++j) {
    p.push_back(s.disk.b(0, j).real());
    p.push_back(s.disk.b(0, j).imag());
  }
  p.push_back(s.theta);
  return Eigen::Map<Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

void refine_unpack(const Eigen::VectorXd& p, RefineState& s) {
  const int m = s.disk.m;
  const int K = s.disk.truncation();
  Eigen::Index i = 0;
  s.disk.a(0) = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double re = p(i++);
    const double im = k >= 2 ? p(i++) : 0.0;
    s.disk.a(k) = Complex(re, im);
    for (int j = 0; j < m; ++j) {
      const double bre = p(i++);
      s.disk.b(k, j) = Complex(bre, p(i++));
    }
  }
  for (int j = 0; j < m; ++j) {
    const double bre = p(i++);
    s.disk.b(0, j) = Complex(bre, p(i++));
  }
  s.theta = p(i);
}

Eigen::VectorXd refine_residual(const RefineState& s, const PerturbationSpec& pert, const std::vector<double>& angles,
                                const RVector& x, Eigen::Index chart) {
  const RVector coll = boundary_residual(s.disk, pert, angles);
  const CVector w = s.disk.evaluate(std::polar(1.0, s.theta));
  const CVector y = pert.straighten(w / w.norm());
  Eigen::VectorXd out(coll.size() + x.size() - 1);
  out.head(coll.size()) = coll;
  Eigen::Index r = coll.size();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i == chart) continue;
    out(r++) = (y(i) / y(chart)).real() - x(i) / x(chart);
  }
  return out;
}

}  // namespace

IncidenceFamily incidence_family(const RVector& x_in, const ModuliChart& chart, const IncidenceOptions& options) {
  const PerturbationSpec& pert = chart.perturbation;
  if (x_in.size() != pert.ambient()) throw InvalidInput("incidence_family: point dimension differs from m + 2");
  if (!(x_in.norm() > 0.0)) throw InvalidInput("incidence_family: zero point");
  IncidenceFamily fam;
  fam.x = x_in.normalized();
  fam.y = pert.psi(fam.x.cast<Complex>());
  fam.threshold = options.threshold > 0.0 ? options.threshold : 0.6 * grid_spacing(chart.grid);
  Eigen::Index xchart = 0;
  fam.x.cwiseAbs().maxCoeff(&xchart);

  NewtonOptions nopt = options.newton;
  const auto samples = uniform_angles(options.boundary_samples);
  for (const auto& node : chart.nodes) {
    if (!node.converged || !node.disk) continue;
    const TaylorDisk h = node.disk->homogeneous();
    double best = kPi;
    double best_theta = 0.0;
    for (double theta : samples) {
      const CVector w = h.evaluate(std::polar(1.0, theta));
      const double d = projective_distance(real_representative(pert.straighten(w / w.norm())), fam.x);
      if (d < best) {
        best = d;
        best_theta = theta;
      }
    }
    if (best > fam.threshold) continue;

    RefineState s{*node.disk, best_theta};
    nopt.truncation = s.disk.truncation();
    const int count = nopt.collocation > 0 ? nopt.collocation : 4 * (nopt.truncation + 1);
    const auto angles = uniform_angles(count);
    Eigen::VectorXd params = refine_pack(s);
    double norm = 0.0;
    bool ok = false;
    for (int it = 0; it <= 20; ++it) {
      const Eigen::VectorXd r0 = refine_residual(s, pert, angles, fam.x, xchart);
      norm = r0.cwiseAbs().maxCoeff();
      if (norm <= nopt.tolerance) {
        ok = true;
        break;
      }
      Eigen::MatrixXd jac(r0.size(), params.size());
      for (Eigen::Index c = 0; c < params.size(); ++c) {
        const double step = 1e-6;
        RefineState sp = s, sm = s;
        Eigen::VectorXd pp = params, pm = params;
        pp(c) += step;
        pm(c) -= step;
        refine_unpack(pp, sp);
        refine_unpack(pm, sm);
        jac.col(c) = (refine_residual(sp, pert, angles, fam.x, xchart) - refine_residual(sm, pert, angles, fam.x, xchart)) /
                     (2.0 * step);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-10);
      params -= svd.solve(r0);
      refine_unpack(params, s);
    }
    if (!ok) continue;

    IncidenceMember mem;
    mem.node = node.index;
    mem.theta = std::remainder(s.theta, kTwoPi);
    if (mem.theta < 0) mem.theta += kTwoPi;
    mem.coarse_distance = best;
    const RVector check = boundary_residual(s.disk, pert, uniform_angles(count, kPi / count));
    mem.residual = std::max(norm, check.cwiseAbs().maxCoeff());
    mem.coordinates = moduli_coordinates(s.disk);
    const auto [e1, e2] = plane_of(s.disk.homogeneous().coeff(0));
    const RVector inplane = e1 * e1.dot(fam.x) + e2 * e2.dot(fam.x);
    mem.deviation = std::asin(std::min(1.0, (fam.x - inplane).norm()));
    mem.disk = std::move(s.disk);
    fam.members.push_back(std::move(mem));
  }
  if (fam.members.empty()) {
    std::ostringstream msg;
    msg << "incidence_family: no disk of the chart passes within " << fam.threshold
        << " of the point; the grid is too coarse";
    throw NumericalFailure(msg.str());
  }
  if (chart.m == 1) {
    const auto [b1, b2] = plane_with_normal(Eigen::Vector3d(fam.x));
    auto angle = [&, b1 = b1, b2 = b2](const IncidenceMember& m) {
      return std::atan2(m.coordinates.dot(b2), m.coordinates.dot(b1));
    };
    std::stable_sort(fam.members.begin(), fam.members.end(),
                     [&](const IncidenceMember& a, const IncidenceMember& b) { return angle(a) < angle(b); });
  }
  return fam;
}

UnperturbedDiagnostics verify_unperturbed(const ModuliChart& chart, double tolerance) {
  if (chart.perturbation.epsilon != 0.0) throw InvalidInput("verify_unperturbed: chart has epsilon != 0");
  UnperturbedDiagnostics diag;
  diag.min_pairwise_distance = kPi;
  diag.min_antipodal_distance = kPi;
  std::vector<CVector> points;
  for (const auto& node : chart.nodes) {
    NodeCheck c;
    c.index = node.index;
    if (!node.converged || !node.disk) {
      diag.failures.push_back("node " + std::to_string(node.index) + ": not converged (" + node.message + ")");
      diag.nodes.push_back(c);
      continue;
    }
    c.coefficient_deviation = node.disk->correction_norm();
    const CVector& q = node.quadric.point;
    c.quadric_defect = std::abs(Complex(q.transpose() * q));
    c.ok = c.coefficient_deviation <= tolerance && c.quadric_defect <= tolerance;
    diag.max_coefficient_deviation = std::max(diag.max_coefficient_deviation, c.coefficient_deviation);
    diag.max_quadric_defect = std::max(diag.max_quadric_defect, c.quadric_defect);
    if (!c.ok) {
      std::ostringstream msg;
      msg << "node " << node.index << ": coefficient deviation " << c.coefficient_deviation << ", quadric defect "
          << c.quadric_defect << " (tolerance " << tolerance << ")";
      diag.failures.push_back(msg.str());
    }
    const CVector opposite = standard_half_line(node.u, -node.v, 1).homogeneous().coeff(0);
    diag.min_antipodal_distance = std::min(diag.min_antipodal_distance, fubini_study(q, opposite));
    points.push_back(q);
    diag.nodes.push_back(c);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      diag.min_pairwise_distance = std::min(diag.min_pairwise_distance, fubini_study(points[i], points[j]));
    }
  }
  if (points.size() > 1 && !(diag.min_pairwise_distance > 1e-8)) {
    diag.failures.push_back("quadric incidence map is not injective on the grid");
  }
  if (!(diag.min_antipodal_distance > 1e-8)) diag.failures.push_back("opposite orientations share a quadric point");
  diag.passed = diag.failures.empty();
  return diag;
}

}  // namespace holodisk
