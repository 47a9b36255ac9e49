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

#include "holodisk/dbar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holodisk/errors.hpp"

namespace holodisk {

namespace {

KernelBasis twisted_kernel(const GLoop& g, int shift, const IndexOptions& options) {
  if (!(options.tau > 0.0)) throw InvalidInput("kernel_basis: tau must be positive");
  if (options.truncation < 0) throw InvalidInput("kernel_basis: truncation must be nonnegative");
  const TwistedProblem p = TwistedProblem::homogeneous(g, shift, options.truncation);
  KernelBasis out;
  out.degree = p.degree();
  if (p.unknowns() == 0) return out;
  const RankDecision d = decide_rank(p.matrix(), options.tau, true);
  out.sigma_max = d.sigma_max;
  out.smallest_kept = d.smallest_kept;
  out.largest_dropped = d.largest_dropped;
  for (Eigen::Index j = 0; j < d.null_space.cols(); ++j) out.basis.push_back(p.unpack(d.null_space.col(j)));
  return out;
}

Eigen::VectorXd real_coefficients(const TaylorDisk& f, int degree) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * f.dim() * (degree + 1));
  for (int k = 0; k <= std::min(degree, f.degree()); ++k) {
    for (Eigen::Index c = 0; c < f.dim(); ++c) {
      x((k * f.dim() + c) * 2) = f.coeff(k)(c).real();
      x((k * f.dim() + c) * 2 + 1) = f.coeff(k)(c).imag();
    }
  }
  return x;
}

// Loop of pointwise inverses, sampled until the tail is resolved.
FourierLoop inverse_loop(const FourierLoop& b) {
  int count = 64;
  while (count < 8 * (b.order() + 1)) count *= 2;
  for (; count <= 16384; count *= 2) {
    const auto values = b.sample(count);
    std::vector<CMatrix> inv(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) inv[j] = values[j].partialPivLu().inverse();
    FourierLoop loop = loop_from_samples(std::span<const CMatrix>(inv));
    if (loop.effective_order(1e-15) < count / 4) return loop.trimmed(1e-15);
  }
  throw NumericalFailure("straighten_frame: inverse frame not resolved with 16384 samples");
}

}  // namespace

KernelBasis kernel_basis(const GLoop& g, const IndexOptions& options) { return twisted_kernel(g, 0, options); }

KernelBasis kernel_basis(const GLoop& g, const IndexOptions& options, const PartialIndexReport& expected) {
  KernelBasis k = kernel_basis(g, options);
  if (k.dimension() != expected.h0) {
    std::ostringstream msg;
    msg << "kernel_basis: dimension " << k.dimension() << " differs from h0 = " << expected.h0
        << " of the index report; truncation K = " << options.truncation << " is insufficient";
    throw NumericalFailure(msg.str());
  }
  return k;
}

KernelBasis cokernel_basis(const GLoop& g, const IndexOptions& options) {
  return twisted_kernel(g.adjoint(), 2, options);
}

int numerical_index(const GLoop& g, const IndexOptions& options) {
  return kernel_basis(g, options).dimension() - cokernel_basis(g, options).dimension();
}

double cokernel_pairing(const TaylorDisk& g, const FourierLoop& r) {
  if (r.rows() != g.dim() || r.cols() != 1) throw InvalidInput("cokernel_pairing: shape mismatch");
  Complex acc = 0.0;
  for (int k = 0; k <= g.degree(); ++k) {
    const int l = -1 - k;
    if (-l > r.order()) break;
    acc += (g.coeff(k).transpose() * r.coeff(l))(0, 0);
  }
  return acc.imag();
}

CVector DiskSolution::evaluate(Complex z) const {
  if (!(std::abs(z) <= 1.0 + 1e-14)) throw InvalidInput("DiskSolution::evaluate: point outside the closed disk");
  return particular.evaluate(z) + holomorphic.evaluate(z);
}

BVPResult solve_bvp(const LinearBVP& problem) {
  const GLoop& g = problem.condition;
  const auto n = g.size();
  if (n == 0) throw InvalidInput("solve_bvp: empty boundary condition");
  if (problem.rhs.dim != n) throw InvalidInput("solve_bvp: right-hand side dimension differs from the condition");
  if (problem.truncation < 0) throw InvalidInput("solve_bvp: truncation must be nonnegative");
  const int min_colloc = 2 * (2 * problem.truncation + static_cast<int>(n));
  const int colloc = problem.collocation > 0 ? problem.collocation : min_colloc;
  if (colloc < min_colloc) {
    std::ostringstream msg;
    msg << "solve_bvp: collocation count " << colloc << " below 2(2K + n) = " << min_colloc;
    throw InvalidInput(msg.str());
  }

  PompeiuField particular = cauchy_pompeiu(problem.rhs, problem.pompeiu);
  const FourierLoop fp = particular.boundary_trace();
  // f = Fp + h on the circle; f = G conj(f) becomes h - G conj(h) = r.
  const FourierLoop r = loop_product(g.loop(), fp.conjugate()) - fp;

  const int kg = g.loop().order();
  const int kr = r.order();
  const int needed = std::max(kg, kr);
  if (problem.truncation < needed) {
    std::ostringstream msg;
    msg << "solve_bvp: truncation K = " << problem.truncation << " below the degree bound " << needed
        << " of the boundary data";
    throw NumericalFailure(msg.str());
  }
  const int degree = needed;
  const int lo = std::min({0, -kg - degree, -kr});
  const int hi = std::max({degree, kg, kr});
  const TwistedProblem p(g.loop(), 0, degree, lo, hi);
  const Eigen::VectorXd b = p.pack_loop(r);
  const RankDecision d = decide_rank(p.matrix(), problem.tau, true);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.unknowns());
  if (d.rank > 0) {
    const Eigen::VectorXd proj = d.left_vectors.leftCols(d.rank).transpose() * b;
    const Eigen::VectorXd scaled = proj.cwiseQuotient(d.singular_values.head(d.rank));
    x = d.singular_vectors.leftCols(d.rank) * scaled;
  }
  const double bnorm = b.norm();
  const double normalized = bnorm > 0.0 ? (p.matrix() * x - b).norm() / bnorm : 0.0;

  if (normalized > problem.obstruction_tolerance) {
    IndexOptions opts{problem.truncation, problem.tau};
    KernelBasis co = cokernel_basis(g, opts);
    if (co.dimension() == 0) {
      std::ostringstream msg;
      msg << "solve_bvp: normalized residual " << normalized << " exceeds " << problem.obstruction_tolerance
          << " but the cokernel is trivial; the discretization is inconsistent";
      throw NumericalFailure(msg.str());
    }
    Obstructed out;
    out.dimension = co.dimension();
    out.normalized_residual = normalized;
    out.pairings.resize(co.dimension());
    for (int i = 0; i < co.dimension(); ++i) out.pairings(i) = cokernel_pairing(co.basis[static_cast<std::size_t>(i)], r);
    out.functionals = std::move(co.basis);
    return out;
  }

  DiskSolution sol;
  sol.holomorphic = p.unpack(x);
  sol.kernel_projection = d.null_space.transpose() * x;
  sol.normalized_residual = normalized;
  sol.interior_residual = particular.fit_residual();
  const FourierLoop trace = fp + sol.holomorphic.boundary_trace();
  double boundary = 0.0;
  for (int j = 0; j < colloc; ++j) {
    const double theta = kTwoPi * (j + 0.5) / colloc;
    const CMatrix u = trace.evaluate(theta);
    boundary = std::max(boundary, (u - g.loop().evaluate(theta) * u.conjugate()).cwiseAbs().maxCoeff());
  }
  sol.boundary_residual = boundary;
  if (!(boundary <= problem.boundary_tolerance)) {
    std::ostringstream msg;
    msg << "solve_bvp: boundary residual " << boundary << " exceeds tolerance " << problem.boundary_tolerance;
    throw NumericalFailure(msg.str());
  }
  sol.particular = std::move(particular);
  sol.grid_values.reserve(problem.rhs.grid.size());
  for (int i = 0; i < problem.rhs.grid.radial; ++i) {
    for (int j = 0; j < problem.rhs.grid.angular; ++j) sol.grid_values.push_back(sol.evaluate(problem.rhs.grid.point(i, j)));
  }
  return sol;
}

StraightenedFrame straighten_frame(const BoundaryFrame& b) {
  StraightenedFrame out;
  out.inverse = inverse_loop(b.loop());
  out.gloop = frame_to_gloop(b);
  int count = 256;
  while (count < 8 * (out.inverse.order() + out.gloop.loop().order() + b.loop().order() + 1)) count *= 2;
  const auto n = b.size();
  double residual = 0.0;
  for (int j = 0; j < count; ++j) {
    const double theta = kTwoPi * (j + 0.5) / count;
    const CMatrix m = out.inverse.evaluate(theta) * out.gloop.loop().evaluate(theta) * b.loop().evaluate(theta).conjugate();
    residual = std::max(residual, (m - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  out.consistency_residual = residual;
  return out;
}

KernelBasis frame_kernel_basis(const BoundaryFrame& b, const IndexOptions& options) {
  const StraightenedFrame s = straighten_frame(b);
  const auto n = b.size();
  const int degree = std::min(options.truncation, s.gloop.loop().order());
  KernelBasis out;
  out.degree = degree;
  const Eigen::Index unknowns = 2 * n * (degree + 1);
  int count = 64;
  while (count < 4 * (degree + s.inverse.order() + 1)) count *= 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(count * n, unknowns);
  for (int j = 0; j < count; ++j) {
    const double theta = kTwoPi * j / count;
    const CMatrix binv = b.loop().evaluate(theta).partialPivLu().inverse();
    for (int k = 0; k <= degree; ++k) {
      const Complex zk = std::polar(1.0, k * theta);
      for (Eigen::Index c = 0; c < n; ++c) {
        const CVector col = binv.col(c) * zk;
        // Im(binv * (x + i y) e_c z^k) = Im(col) x + Re(col) y
        a.block(j * n, (k * n + c) * 2, n, 1) = col.imag();
        a.block(j * n, (k * n + c) * 2 + 1, n, 1) = col.real();
      }
    }
  }
  const RankDecision d = decide_rank(a, options.tau, true);
  out.sigma_max = d.sigma_max;
  out.smallest_kept = d.smallest_kept;
  out.largest_dropped = d.largest_dropped;
  for (Eigen::Index j = 0; j < d.null_space.cols(); ++j) {
    TaylorDisk f(n, degree);
    for (int k = 0; k <= degree; ++k) {
      for (Eigen::Index c = 0; c < n; ++c) {
        f.coeff(k)(c) = Complex(d.null_space((k * n + c) * 2, j), d.null_space((k * n + c) * 2 + 1, j));
      }
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

double subspace_distance(const std::vector<TaylorDisk>& a, const std::vector<TaylorDisk>& b) {
  if (a.size() != b.size()) return 1.0;
  if (a.empty()) return 0.0;
  int degree = 0;
  for (const auto& f : a) degree = std::max(degree, f.degree());
  for (const auto& f : b) degree = std::max(degree, f.degree());
  const Eigen::Index rows = 2 * a.front().dim() * (degree + 1);
  Eigen::MatrixXd ma(rows, static_cast<Eigen::Index>(a.size()));
  Eigen::MatrixXd mb(rows, static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) ma.col(static_cast<Eigen::Index>(i)) = real_coefficients(a[i], degree);
  for (std::size_t i = 0; i < b.size(); ++i) mb.col(static_cast<Eigen::Index>(i)) = real_coefficients(b[i], degree);
  const Eigen::MatrixXd qa = Eigen::HouseholderQR<Eigen::MatrixXd>(ma).householderQ() *
                             Eigen::MatrixXd::Identity(rows, ma.cols());
  const Eigen::MatrixXd qb = Eigen::HouseholderQR<Eigen::MatrixXd>(mb).householderQ() *
                             Eigen::MatrixXd::Identity(rows, mb.cols());
  const Eigen::MatrixXd residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return svd.singularValues()(0);
}

}  // namespace holodisk
