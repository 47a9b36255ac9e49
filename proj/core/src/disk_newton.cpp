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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holodisk/boundary.hpp"
#include "holodisk/errors.hpp"
#include "holodisk/moduli.hpp"

namespace holodisk {

namespace {

constexpr Complex kI(0.0, 1.0);

// Column of the (k, field, part) unknown; field 0 is a, field j + 1 is b_j.
Eigen::Index unknown_index(int k, int field, int part, int m) { return (static_cast<Eigen::Index>(k) * (m + 1) + field) * 2 + part; }

enum class Freedom { all, gauge_fixed, pinned };

std::vector<Eigen::Index> free_columns(int truncation, int m, Freedom freedom) {
  std::vector<Eigen::Index> cols;
  for (int k = 0; k <= truncation; ++k) {
    for (int f = 0; f <= m; ++f) {
      for (int part = 0; part < 2; ++part) {
        if (freedom != Freedom::all) {
          if (k == 0 && f == 0) continue;
          if (k == 1 && f == 0 && part == 1) continue;
          if (freedom == Freedom::pinned && k == 0) continue;
        }
        cols.push_back(unknown_index(k, f, part, m));
      }
    }
  }
  return cols;
}

Eigen::VectorXd pack(const DiskMap& f) {
  const int K = f.truncation();
  Eigen::VectorXd x(2 * (K + 1) * (f.m + 1));
  for (int k = 0; k <= K; ++k) {
    x(unknown_index(k, 0, 0, f.m)) = f.a(k).real();
    x(unknown_index(k, 0, 1, f.m)) = f.a(k).imag();
    for (int j = 0; j < f.m; ++j) {
      x(unknown_index(k, j + 1, 0, f.m)) = f.b(k, j).real();
      x(unknown_index(k, j + 1, 1, f.m)) = f.b(k, j).imag();
    }
  }
  return x;
}

void unpack(const Eigen::VectorXd& x, DiskMap& f) {
  const int K = f.truncation();
  for (int k = 0; k <= K; ++k) {
    f.a(k) = Complex(x(unknown_index(k, 0, 0, f.m)), x(unknown_index(k, 0, 1, f.m)));
    for (int j = 0; j < f.m; ++j) {
      f.b(k, j) = Complex(x(unknown_index(k, j + 1, 0, f.m)), x(unknown_index(k, j + 1, 1, f.m)));
    }
  }
}

void enforce_slices(DiskMap& f) {
  f.a(0) = 0.0;
  if (f.truncation() >= 1) f.a(1) = f.a(1).real();
  f.b.row(0).setZero();
}

DiskMap resized(const DiskMap& f, int truncation) {
  DiskMap g = f;
  g.a = CVector::Zero(truncation + 1);
  g.b = Eigen::MatrixXcd::Zero(truncation + 1, f.m);
  const int keep = std::min(truncation, f.truncation());
  g.a.head(keep + 1) = f.a.head(keep + 1);
  g.b.topRows(keep + 1) = f.b.topRows(keep + 1);
  return g;
}

struct Linearization {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
};

Linearization linearize(const DiskMap& f, const PerturbationSpec& p, const std::vector<double>& angles, bool want_j) {
  const int m = f.m;
  const int K = f.truncation();
  const auto n = static_cast<Eigen::Index>(m + 2);
  const TaylorDisk h = f.homogeneous();
  Linearization lin;
  const auto rows = static_cast<Eigen::Index>(angles.size()) * (m + 1);
  lin.residual.resize(rows);
  if (want_j) lin.jacobian = Eigen::MatrixXd::Zero(rows, 2 * (K + 1) * (m + 1));

  std::vector<CVector> directions;
  directions.push_back(f.u.cast<Complex>() - kI * f.v.cast<Complex>());
  for (int j = 0; j < m; ++j) directions.push_back(f.w.col(j).cast<Complex>());

  for (std::size_t l = 0; l < angles.size(); ++l) {
    const double theta = angles[l];
    const CVector w = h.evaluate(std::polar(1.0, theta));
    const double scale = w.norm();
    if (!(scale > 1e-12)) throw InvalidInput("boundary_residual: homogeneous coordinates vanish on the boundary");
    const CVector y = p.straighten(w / scale);
    Eigen::Index a = 0;
    y.cwiseAbs().maxCoeff(&a);
    const CMatrix minv_t = want_j ? CMatrix(p.dpsi(y).transpose().partialPivLu().inverse()) : CMatrix();
    Eigen::Index row = static_cast<Eigen::Index>(l) * (m + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == a) continue;
      const Complex rho = y(i) / y(a);
      lin.residual(row) = rho.imag();
      if (want_j) {
        CVector ell = CVector::Zero(n);
        ell(i) = 1.0;
        ell(a) -= rho;
        ell /= scale * y(a);
        const CVector lambda = minv_t * ell;
        for (int f_idx = 0; f_idx <= m; ++f_idx) {
          const Complex mu = lambda.cwiseProduct(directions[static_cast<std::size_t>(f_idx)]).sum();
          for (int k = 0; k <= K; ++k) {
            const Complex me = mu * std::polar(1.0, k * theta);
            lin.jacobian(row, unknown_index(k, f_idx, 0, m)) = me.imag();
            lin.jacobian(row, unknown_index(k, f_idx, 1, m)) = me.real();
          }
        }
      }
      ++row;
    }
  }
  return lin;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& j, const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(j.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = j.col(cols[c]);
  return out;
}

int collocation_count(const NewtonOptions& o, int truncation) {
  return o.collocation > 0 ? o.collocation : 4 * (truncation + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// DiskMap

TaylorDisk DiskMap::homogeneous() const {
  const int K = truncation();
  const auto n = static_cast<Eigen::Index>(m + 2);
  TaylorDisk f(n, std::max(1, K));
  const CVector plus = u.cast<Complex>() + kI * v.cast<Complex>();
  const CVector minus = u.cast<Complex>() - kI * v.cast<Complex>();
  f.coeff(0) += plus;
  f.coeff(1) += minus;
  for (int k = 0; k <= K; ++k) {
    f.coeff(k) += a(k) * minus;
    for (int j = 0; j < m; ++j) f.coeff(k) += b(k, j) * w.col(j).cast<Complex>();
  }
  return f;
}

CVector DiskMap::evaluate(Complex z) const { return homogeneous().evaluate(z); }

std::array<double, 3> DiskMap::gauge_values() const {
  return {a(0).real(), a(0).imag(), truncation() >= 1 ? a(1).imag() : 0.0};
}

double DiskMap::correction_norm() const {
  double c = a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0;
  if (b.size() > 0) c = std::max(c, b.cwiseAbs().maxCoeff());
  return c;
}

double DiskMap::coefficient_norm() const { return std::sqrt(a.squaredNorm() + b.squaredNorm()); }

Eigen::MatrixXd orthonormal_completion(const RVector& u, const RVector& v) {
  const auto n = u.size();
  Eigen::MatrixXd basis(n, 2);
  basis.col(0) = u;
  basis.col(1) = v;
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(basis).householderQ();
  return q.rightCols(n - 2);
}

DiskMap standard_half_line(const RVector& u, const RVector& v, int truncation) {
  if (u.size() != v.size() || u.size() < 3) throw InvalidInput("standard_half_line: need u, v in R^{m+2} with m >= 1");
  if (truncation < 1) throw InvalidInput("standard_half_line: truncation must be >= 1");
  const double defect = std::max({std::abs(u.squaredNorm() - 1.0), std::abs(v.squaredNorm() - 1.0), std::abs(u.dot(v))});
  if (!(defect <= 1e-12)) {
    std::ostringstream msg;
    msg << "standard_half_line: (u, v) is not orthonormal (defect " << defect << ")";
    throw InvalidInput(msg.str());
  }
  DiskMap f;
  f.m = static_cast<int>(u.size()) - 2;
  f.u = u;
  f.v = v;
  f.w = orthonormal_completion(u, v);
  f.a = CVector::Zero(truncation + 1);
  f.b = Eigen::MatrixXcd::Zero(truncation + 1, f.m);
  return f;
}

DiskMap anchor_disk(const TaylorDisk& f, const RVector& u, const RVector& v, int truncation) {
  DiskMap d = standard_half_line(u, v, truncation);
  if (f.dim() != u.size()) throw InvalidInput("anchor_disk: dimension mismatch");
  PowerSeries alpha(static_cast<std::size_t>(f.degree() + 1));
  PowerSeries beta(alpha.size());
  std::vector<PowerSeries> gamma(static_cast<std::size_t>(d.m), PowerSeries(alpha.size()));
  for (int k = 0; k <= f.degree(); ++k) {
    const CVector& c = f.coeff(k);
    const Complex cu = u.cast<Complex>().dot(c);
    const Complex cv = v.cast<Complex>().dot(c);
    alpha[static_cast<std::size_t>(k)] = 0.5 * (cu - kI * cv);
    beta[static_cast<std::size_t>(k)] = 0.5 * (cu + kI * cv);
    for (int j = 0; j < d.m; ++j) gamma[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = d.w.col(j).cast<Complex>().dot(c);
  }
  if (std::abs(alpha[0]) < 1e-12) throw InvalidInput("anchor_disk: map has no component along u + iv at the center");
  const PowerSeries ratio = series_quotient(beta, alpha, truncation);
  for (int k = 0; k <= truncation; ++k) d.a(k) = ratio[static_cast<std::size_t>(k)];
  if (truncation >= 1) d.a(1) -= 1.0;
  for (int j = 0; j < d.m; ++j) {
    const PowerSeries bj = series_quotient(gamma[static_cast<std::size_t>(j)], alpha, truncation);
    for (int k = 0; k <= truncation; ++k) d.b(k, j) = bj[static_cast<std::size_t>(k)];
  }
  return d;
}

std::vector<double> uniform_angles(int count, double offset) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = kTwoPi * j / count + offset;
  return out;
}

RVector boundary_residual(const TaylorDisk& f, const PerturbationSpec& p, const std::vector<double>& angles) {
  p.validate();
  if (f.dim() != p.ambient()) throw InvalidInput("boundary_residual: map dimension differs from m + 2");
  const int m = p.m;
  RVector out(static_cast<Eigen::Index>(angles.size()) * (m + 1));
  Eigen::Index row = 0;
  for (double theta : angles) {
    const CVector w = f.evaluate(std::polar(1.0, theta));
    const double scale = w.norm();
    if (!(scale > 1e-12)) throw InvalidInput("boundary_residual: homogeneous coordinates vanish on the boundary");
    const CVector y = p.straighten(w / scale);
    Eigen::Index a = 0;
    y.cwiseAbs().maxCoeff(&a);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (i != a) out(row++) = (y(i) / y(a)).imag();
    }
  }
  return out;
}

RVector boundary_residual(const DiskMap& f, const PerturbationSpec& p, const std::vector<double>& angles) {
  if (f.m != p.m) throw InvalidInput("boundary_residual: disk and perturbation disagree on m");
  return boundary_residual(f.homogeneous(), p, angles);
}

// ---------------------------------------------------------------------------
// Newton

NewtonResult newton_disk(const DiskMap& f0, const PerturbationSpec& p, const NewtonOptions& options) {
  p.validate();
  if (f0.m != p.m) throw InvalidInput("newton_disk: disk and perturbation disagree on m");
  if (options.truncation < 1 || options.max_iterations < 0 || !(options.tolerance > 0.0)) {
    throw InvalidInput("newton_disk: invalid options");
  }
  NewtonResult result;
  result.disk = resized(f0, options.truncation);
  enforce_slices(result.disk);
  const int K = options.truncation;
  const int count = collocation_count(options, K);
  const auto angles = uniform_angles(count);
  const auto cols = free_columns(K, p.m, Freedom::pinned);

  Eigen::VectorXd x = pack(result.disk);
  for (int it = 0;; ++it) {
    Linearization lin = linearize(result.disk, p, angles, true);
    const double norm = lin.residual.cwiseAbs().maxCoeff();
    result.history.push_back(norm);
    if (norm <= options.tolerance) break;
    if (it >= options.max_iterations) {
      std::ostringstream msg;
      msg << "newton_disk: no convergence in " << options.max_iterations << " iterations (residual " << norm
          << " > " << options.tolerance << ")";
      throw NumericalFailure(msg.str());
    }
    const Eigen::MatrixXd jr = select_columns(lin.jacobian, cols);
    const RankDecision d = decide_rank(jr, options.tau, true);
    if (d.nullity != 0) {
      std::ostringstream msg;
      msg << "newton_disk: rank anomaly, gauge-fixed linearization has a " << d.nullity
          << "-dimensional kernel (Fredholm irregular or eps too large)";
      throw NumericalFailure(msg.str());
    }
    const Eigen::VectorXd proj = d.left_vectors.transpose() * lin.residual;
    const Eigen::VectorXd step = d.singular_vectors * proj.cwiseQuotient(d.singular_values);
    for (std::size_t c = 0; c < cols.size(); ++c) x(cols[c]) -= step(static_cast<Eigen::Index>(c));
    unpack(x, result.disk);
    ++result.iterations;
  }

  const RVector check = boundary_residual(result.disk, p, uniform_angles(count, kPi / count));
  result.residual = check.cwiseAbs().maxCoeff();
  if (!(result.residual <= options.acceptance)) {
    std::ostringstream msg;
    msg << "newton_disk: verification residual " << result.residual << " between collocation angles exceeds "
        << options.acceptance << "; increase the truncation";
    throw NumericalFailure(msg.str());
  }
  result.total_iterations = result.iterations;
  return result;
}

NewtonResult continue_disk(const RVector& u, const RVector& v, const PerturbationSpec& p,
                           const NewtonOptions& options) {
  const DiskMap start = standard_half_line(u, v, options.truncation);
  if (p.epsilon == 0.0 || options.continuation_steps <= 1) return newton_disk(start, p, options);
  const int steps = options.continuation_steps;
  std::vector<Eigen::VectorXd> path{pack(start)};
  NewtonResult last;
  int total = 0;
  for (int s = 1; s <= steps; ++s) {
    DiskMap guess = start;
    if (path.size() >= 2) {
      unpack(2.0 * path[path.size() - 1] - path[path.size() - 2], guess);
    } else {
      unpack(path.back(), guess);
    }
    last = newton_disk(guess, p.with_epsilon(p.epsilon * s / steps), options);
    total += last.iterations;
    path.push_back(pack(last.disk));
  }
  last.total_iterations = total;
  return last;
}

LinearizationDims linearization_dims(const DiskMap& f, const PerturbationSpec& p, const NewtonOptions& options) {
  const DiskMap g = resized(f, options.truncation);
  const int K = options.truncation;
  const Linearization lin = linearize(g, p, uniform_angles(collocation_count(options, K)), true);
  LinearizationDims dims;
  auto nullity = [&](Freedom fr) {
    const auto cols = free_columns(K, p.m, fr);
    return static_cast<int>(decide_rank(select_columns(lin.jacobian, cols), options.tau, false).nullity);
  };
  dims.before_gauge = nullity(Freedom::all);
  dims.after_gauge = nullity(Freedom::gauge_fixed);
  dims.pinned = nullity(Freedom::pinned);
  return dims;
}

QuadricPoint quadric_point(const DiskMap& f) {
  const TaylorDisk h = f.homogeneous();
  const int D = h.degree();
  PowerSeries q(static_cast<std::size_t>(2 * D + 1), 0.0);
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    PowerSeries c(static_cast<std::size_t>(D + 1));
    for (int k = 0; k <= D; ++k) c[static_cast<std::size_t>(k)] = h.coeff(k)(i);
    const PowerSeries sq = series_product(c, c, 2 * D);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += sq[k];
  }
  auto eval = [&q](Complex z, Complex& dq) {
    Complex v = 0.0;
    dq = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
      dq = dq * z + v;
      v = v * z + *it;
    }
    return v;
  };
  Complex z = 0.0;
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    Complex dq;
    const Complex v = eval(z, dq);
    if (std::abs(dq) == 0.0) break;
    const Complex step = v / dq;
    z -= step;
    if (std::abs(step) <= 1e-15) {
      converged = true;
      break;
    }
  }
  if (!converged || !(std::abs(z) < 1.0)) {
    throw NumericalFailure("quadric_point: no interior zero of sum F_i^2 found near the center");
  }
  QuadricPoint out;
  out.parameter = z;
  CVector pt = h.evaluate(z);
  pt.normalize();
  Eigen::Index big = 0;
  pt.cwiseAbs().maxCoeff(&big);
  pt *= std::conj(pt(big)) / std::abs(pt(big));
  out.point = pt;
  return out;
}

double fubini_study(const CVector& p, const CVector& q) {
  const double c = std::abs(p.dot(q)) / (p.norm() * q.norm());
  return std::acos(std::min(1.0, c));
}

}  // namespace holodisk
