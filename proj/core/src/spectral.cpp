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

#include "holodisk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holodisk/errors.hpp"

namespace holodisk {

namespace {

// e^{-2 pi i j / count} for j = 0..count-1, indexed exactly to avoid drift.
std::vector<Complex> roots_of_unity(int count, int sign) {
  std::vector<Complex> w(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    w[static_cast<std::size_t>(j)] = std::polar(1.0, sign * kTwoPi * j / count);
  }
  return w;
}

int positive_mod(long long a, int n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

bool all_finite(const CMatrix& m) {
  return m.array().real().allFinite() && m.array().imag().allFinite();
}

}  // namespace

// ---------------------------------------------------------------------------
// FourierLoop

FourierLoop::FourierLoop(Eigen::Index rows, Eigen::Index cols, int order)
    : rows_(rows), cols_(cols), order_(order) {
  if (rows <= 0 || cols <= 0 || order < 0) {
    throw InvalidInput("FourierLoop: shape and order must be positive");
  }
  coeffs_.assign(static_cast<std::size_t>(2 * order + 1), CMatrix::Zero(rows, cols));
}

FourierLoop FourierLoop::scalar(const std::map<int, Complex>& coeffs) {
  int order = 0;
  for (const auto& [k, c] : coeffs) order = std::max(order, std::abs(k));
  FourierLoop l(1, 1, order);
  for (const auto& [k, c] : coeffs) l.coeff(k)(0, 0) = c;
  return l;
}

FourierLoop FourierLoop::constant(const CMatrix& value) {
  FourierLoop l(value.rows(), value.cols(), 0);
  l.coeff(0) = value;
  return l;
}

FourierLoop FourierLoop::monomial(int k, const CMatrix& value) {
  FourierLoop l(value.rows(), value.cols(), std::abs(k));
  l.coeff(k) = value;
  return l;
}

FourierLoop FourierLoop::diagonal_monomials(std::span<const int> exponents) {
  const auto n = static_cast<Eigen::Index>(exponents.size());
  int order = 0;
  for (int j : exponents) order = std::max(order, std::abs(j));
  FourierLoop l(n, n, order);
  for (Eigen::Index i = 0; i < n; ++i) l.coeff(exponents[static_cast<std::size_t>(i)])(i, i) = 1.0;
  return l;
}

const CMatrix& FourierLoop::coeff(int k) const {
  if (std::abs(k) > order_) throw InvalidInput("FourierLoop::coeff: frequency outside band");
  return coeffs_[static_cast<std::size_t>(k + order_)];
}

CMatrix& FourierLoop::coeff(int k) {
  if (std::abs(k) > order_) throw InvalidInput("FourierLoop::coeff: frequency outside band");
  return coeffs_[static_cast<std::size_t>(k + order_)];
}

CMatrix FourierLoop::coeff_or_zero(int k) const {
  if (std::abs(k) > order_) return CMatrix::Zero(rows_, cols_);
  return coeffs_[static_cast<std::size_t>(k + order_)];
}

CMatrix FourierLoop::evaluate(double theta) const {
  CMatrix v = CMatrix::Zero(rows_, cols_);
  for (int k = -order_; k <= order_; ++k) {
    v += coeffs_[static_cast<std::size_t>(k + order_)] * std::polar(1.0, k * theta);
  }
  return v;
}

Complex FourierLoop::evaluate_scalar(double theta) const {
  Complex v = 0.0;
  for (int k = -order_; k <= order_; ++k) {
    v += coeffs_[static_cast<std::size_t>(k + order_)](0, 0) * std::polar(1.0, k * theta);
  }
  return v;
}

std::vector<CMatrix> FourierLoop::sample(int count) const {
  if (count <= 0) throw InvalidInput("FourierLoop::sample: count must be positive");
  const auto w = roots_of_unity(count, +1);
  std::vector<CMatrix> out(static_cast<std::size_t>(count), CMatrix::Zero(rows_, cols_));
  for (int j = 0; j < count; ++j) {
    auto& v = out[static_cast<std::size_t>(j)];
    for (int k = -order_; k <= order_; ++k) {
      const auto& c = coeffs_[static_cast<std::size_t>(k + order_)];
      v += c * w[static_cast<std::size_t>(positive_mod(static_cast<long long>(k) * j, count))];
    }
  }
  return out;
}

FourierLoop FourierLoop::conjugate() const {
  FourierLoop out(rows_, cols_, order_);
  for (int k = -order_; k <= order_; ++k) out.coeff(k) = coeff(-k).conjugate();
  return out;
}

FourierLoop FourierLoop::adjoint() const {
  FourierLoop out(cols_, rows_, order_);
  for (int k = -order_; k <= order_; ++k) out.coeff(k) = coeff(-k).adjoint();
  return out;
}

FourierLoop FourierLoop::transpose() const {
  FourierLoop out(cols_, rows_, order_);
  for (int k = -order_; k <= order_; ++k) out.coeff(k) = coeff(k).transpose();
  return out;
}

FourierLoop FourierLoop::shifted(int shift) const {
  FourierLoop out(rows_, cols_, order_ + std::abs(shift));
  for (int k = -order_; k <= order_; ++k) out.coeff(k + shift) = coeff(k);
  return out;
}

FourierLoop FourierLoop::truncated(int order) const {
  FourierLoop out(rows_, cols_, order);
  for (int k = -std::min(order, order_); k <= std::min(order, order_); ++k) out.coeff(k) = coeff(k);
  return out;
}

int FourierLoop::effective_order(double rel_tol) const {
  const double cutoff = rel_tol * max_coeff_norm();
  int eff = 0;
  for (int k = -order_; k <= order_; ++k) {
    if (coeff(k).norm() > cutoff) eff = std::max(eff, std::abs(k));
  }
  return eff;
}

double FourierLoop::max_coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.norm());
  return m;
}

FourierLoop& FourierLoop::operator+=(const FourierLoop& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InvalidInput("FourierLoop: shape mismatch");
  if (other.order_ > order_) *this = truncated(other.order_);
  for (int k = -other.order_; k <= other.order_; ++k) coeff(k) += other.coeff(k);
  return *this;
}

FourierLoop& FourierLoop::operator-=(const FourierLoop& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InvalidInput("FourierLoop: shape mismatch");
  if (other.order_ > order_) *this = truncated(other.order_);
  for (int k = -other.order_; k <= other.order_; ++k) coeff(k) -= other.coeff(k);
  return *this;
}

FourierLoop& FourierLoop::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

FourierLoop operator+(FourierLoop a, const FourierLoop& b) { return a += b; }
FourierLoop operator-(FourierLoop a, const FourierLoop& b) { return a -= b; }
FourierLoop operator*(Complex s, FourierLoop a) { return a *= s; }

FourierLoop loop_from_samples(std::span<const CMatrix> samples) {
  const int count = static_cast<int>(samples.size());
  if (count < 2 || count % 2 != 0) {
    throw InvalidInput("loop_from_samples: need an even number (>= 2) of samples");
  }
  const auto rows = samples[0].rows();
  const auto cols = samples[0].cols();
  for (const auto& s : samples) {
    if (s.rows() != rows || s.cols() != cols) throw InvalidInput("loop_from_samples: inconsistent shapes");
    if (!all_finite(s)) throw InvalidInput("loop_from_samples: non-finite sample");
  }
  const int order = count / 2 - 1;
  const auto w = roots_of_unity(count, -1);
  FourierLoop out(rows, cols, order);
  for (int k = -order; k <= order; ++k) {
    CMatrix acc = CMatrix::Zero(rows, cols);
    for (int j = 0; j < count; ++j) {
      acc += samples[static_cast<std::size_t>(j)] *
             w[static_cast<std::size_t>(positive_mod(static_cast<long long>(k) * j, count))];
    }
    out.coeff(k) = acc / static_cast<double>(count);
  }
  return out;
}

FourierLoop loop_from_samples(std::span<const Complex> samples) {
  std::vector<CMatrix> m;
  m.reserve(samples.size());
  for (Complex s : samples) m.push_back(CMatrix::Constant(1, 1, s));
  return loop_from_samples(std::span<const CMatrix>(m));
}

FourierLoop loop_product(const FourierLoop& a, const FourierLoop& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "loop_product: shape mismatch (" << a.rows() << "x" << a.cols() << ") * (" << b.rows() << "x"
        << b.cols() << ")";
    throw InvalidInput(msg.str());
  }
  FourierLoop out(a.rows(), b.cols(), a.order() + b.order());
  for (int p = -a.order(); p <= a.order(); ++p) {
    for (int q = -b.order(); q <= b.order(); ++q) out.coeff(p + q) += a.coeff(p) * b.coeff(q);
  }
  return out;
}

FourierLoop hardy_project(const FourierLoop& l, HardyPart part) {
  FourierLoop out(l.rows(), l.cols(), l.order());
  for (int k = -l.order(); k <= l.order(); ++k) {
    const bool keep = (part == HardyPart::nonnegative) ? (k >= 0) : (k < 0);
    if (keep) out.coeff(k) = l.coeff(k);
  }
  return out;
}

int winding_number(std::span<const Complex> samples, double min_modulus) {
  const std::size_t count = samples.size();
  if (count < 3) throw InvalidInput("winding_number: need at least 3 samples");
  double min_abs = std::abs(samples[0]);
  for (const Complex& a : samples) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidInput("winding_number: non-finite sample");
    min_abs = std::min(min_abs, std::abs(a));
  }
  if (!(min_abs > min_modulus)) {
    std::ostringstream msg;
    msg << "winding_number: loop dips to |l| = " << min_abs << " <= threshold " << min_modulus
        << "; condition is not totally real";
    throw InvalidInput(msg.str());
  }
  double total = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double step = std::arg(samples[(j + 1) % count] / samples[j]);
    if (std::abs(step) > 0.9 * kPi) {
      throw NumericalFailure("winding_number: argument jump exceeds 0.9 pi between samples; loop is undersampled");
    }
    total += step;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

int winding_number(const FourierLoop& l, const WindingOptions& options) {
  if (!l.is_scalar()) throw InvalidInput("winding_number: loop must be scalar");
  const auto values = l.sample(options.samples);
  std::vector<Complex> s(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) s[j] = values[j](0, 0);
  return winding_number(s, options.min_modulus);
}

// ---------------------------------------------------------------------------
// TaylorDisk

TaylorDisk::TaylorDisk(Eigen::Index dim, int degree) : dim_(dim) {
  if (dim <= 0 || degree < 0) throw InvalidInput("TaylorDisk: dimension and degree must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(degree + 1), CVector::Zero(dim));
}

TaylorDisk::TaylorDisk(std::vector<CVector> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("TaylorDisk: need at least one coefficient");
  dim_ = coeffs_.front().size();
  for (const auto& c : coeffs_) {
    if (c.size() != dim_) throw InvalidInput("TaylorDisk: inconsistent coefficient sizes");
  }
}

TaylorDisk TaylorDisk::scalar(const std::vector<Complex>& coeffs) {
  std::vector<CVector> c;
  c.reserve(coeffs.size());
  for (Complex a : coeffs) c.push_back(CVector::Constant(1, a));
  return TaylorDisk(std::move(c));
}

CVector TaylorDisk::evaluate(Complex z) const {
  CVector acc = CVector::Zero(dim_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CVector TaylorDisk::derivative(Complex z) const {
  CVector acc = CVector::Zero(dim_);
  for (int j = degree(); j >= 1; --j) acc = acc * z + static_cast<double>(j) * coeff(j);
  return acc;
}

FourierLoop TaylorDisk::boundary_trace() const {
  FourierLoop l(dim_, 1, degree());
  for (int j = 0; j <= degree(); ++j) l.coeff(j) = coeff(j);
  return l;
}

double TaylorDisk::coeff_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += c.squaredNorm();
  return std::sqrt(s);
}

TaylorDisk& TaylorDisk::operator+=(const TaylorDisk& other) {
  if (other.dim_ != dim_) throw InvalidInput("TaylorDisk: dimension mismatch");
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), CVector::Zero(dim_));
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

TaylorDisk& TaylorDisk::operator-=(const TaylorDisk& other) {
  if (other.dim_ != dim_) throw InvalidInput("TaylorDisk: dimension mismatch");
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), CVector::Zero(dim_));
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

std::vector<CVector> eval_disk(const TaylorDisk& f, std::span<const Complex> points) {
  std::vector<CVector> out;
  out.reserve(points.size());
  for (Complex z : points) {
    if (!(std::abs(z) <= 1.0 + 1e-14)) {
      std::ostringstream msg;
      msg << "eval_disk: point " << z << " lies outside the closed unit disk";
      throw InvalidInput(msg.str());
    }
    out.push_back(f.evaluate(z));
  }
  return out;
}

PowerSeries series_product(const PowerSeries& a, const PowerSeries& b, int degree) {
  PowerSeries out(static_cast<std::size_t>(degree + 1), 0.0);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= degree; ++i) {
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= degree; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

PowerSeries series_quotient(const PowerSeries& a, const PowerSeries& b, int degree) {
  if (b.empty() || b[0] == 0.0) throw InvalidInput("series_quotient: divisor has vanishing constant term");
  PowerSeries q(static_cast<std::size_t>(degree + 1), 0.0);
  for (int n = 0; n <= degree; ++n) {
    Complex acc = static_cast<std::size_t>(n) < a.size() ? a[static_cast<std::size_t>(n)] : 0.0;
    for (int j = 1; j <= n && static_cast<std::size_t>(j) < b.size(); ++j) {
      acc -= b[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(n - j)];
    }
    q[static_cast<std::size_t>(n)] = acc / b[0];
  }
  return q;
}

void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count <= 0) throw InvalidInput("gauss_legendre_unit: count must be positive");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < count; ++i) {
    // Newton on P_count starting from the Chebyshev-like guess.
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = count == 1 ? x : p1;
      const double pm = count == 1 ? 1.0 : p0;
      dp = count * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pn = count == 1 ? x : p1;
    const double pm = count == 1 ? 1.0 : p0;
    dp = count * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1], ascending order
    const std::size_t slot = static_cast<std::size_t>(count - 1 - i);
    nodes[slot] = 0.5 * (x + 1.0);
    weights[slot] = 0.5 * w;
  }
}

DiskGrid DiskGrid::make(int radial, int angular) {
  if (radial < 2 || angular < 4 || angular % 2 != 0) {
    throw InvalidInput("DiskGrid: need radial >= 2 and an even angular count >= 4");
  }
  DiskGrid g;
  g.radial = radial;
  g.angular = angular;
  gauss_legendre_unit(radial, g.radii, g.weights);
  return g;
}

RHSForm RHSForm::sample(const DiskGrid& grid, Eigen::Index dim, const std::function<CVector(Complex)>& density) {
  RHSForm f;
  f.grid = grid;
  f.dim = dim;
  f.density.reserve(grid.size());
  for (int i = 0; i < grid.radial; ++i) {
    for (int j = 0; j < grid.angular; ++j) f.density.push_back(density(grid.point(i, j)));
  }
  f.validate();
  return f;
}

RHSForm RHSForm::zero(const DiskGrid& grid, Eigen::Index dim) {
  RHSForm f;
  f.grid = grid;
  f.dim = dim;
  f.density.assign(grid.size(), CVector::Zero(dim));
  return f;
}

void RHSForm::validate() const {
  if (density.size() != grid.size()) {
    std::ostringstream msg;
    msg << "RHSForm: " << density.size() << " samples for a grid of " << grid.size() << " nodes";
    throw InvalidInput(msg.str());
  }
  for (const auto& v : density) {
    if (v.size() != dim) throw InvalidInput("RHSForm: sample dimension mismatch");
    if (!all_finite(v)) throw InvalidInput("RHSForm: non-finite density sample");
  }
}

double RHSForm::max_abs() const {
  double m = 0.0;
  for (const auto& v : density) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace holodisk
