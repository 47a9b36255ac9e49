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
// Truncated Fourier series on the unit circle, Taylor series on the closed
// unit disk, and the Cauchy-Pompeiu particular solution of the
// inhomogeneous Cauchy-Riemann equation.

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace holodisk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Finite Fourier series l(theta) = sum_{|k| <= K} c_k e^{ik theta} with
/// rows x cols matrix coefficients. Scalar loops are 1 x 1.
class FourierLoop {
 public:
  FourierLoop() = default;
  FourierLoop(Eigen::Index rows, Eigen::Index cols, int order);

  static FourierLoop scalar(const std::map<int, Complex>& coeffs);
  static FourierLoop constant(const CMatrix& value);
  /// value * e^{ik theta}
  static FourierLoop monomial(int k, const CMatrix& value);
  /// diag(e^{i j_1 theta}, ..., e^{i j_n theta})
  static FourierLoop diagonal_monomials(std::span<const int> exponents);

  int order() const { return order_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  /// Coefficient of e^{ik theta}; requires |k| <= order().
  const CMatrix& coeff(int k) const;
  CMatrix& coeff(int k);
  /// Coefficient of e^{ik theta}, zero outside the stored band.
  CMatrix coeff_or_zero(int k) const;

  CMatrix evaluate(double theta) const;
  Complex evaluate_scalar(double theta) const;
  /// Values at theta_j = 2 pi j / count.
  std::vector<CMatrix> sample(int count) const;

  /// Pointwise complex conjugate: c'_k = conj(c_{-k}).
  FourierLoop conjugate() const;
  /// Pointwise conjugate transpose.
  FourierLoop adjoint() const;
  FourierLoop transpose() const;
  /// Multiplication by e^{i shift theta}.
  FourierLoop shifted(int shift) const;
  FourierLoop truncated(int order) const;
  /// Smallest band containing every coefficient whose norm exceeds
  /// rel_tol times the largest coefficient norm.
  int effective_order(double rel_tol) const;
  FourierLoop trimmed(double rel_tol) const { return truncated(effective_order(rel_tol)); }
  double max_coeff_norm() const;

  FourierLoop& operator+=(const FourierLoop& other);
  FourierLoop& operator-=(const FourierLoop& other);
  FourierLoop& operator*=(Complex s);

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  int order_ = 0;
  std::vector<CMatrix> coeffs_;  // index k + order_
};

FourierLoop operator+(FourierLoop a, const FourierLoop& b);
FourierLoop operator-(FourierLoop a, const FourierLoop& b);
FourierLoop operator*(Complex s, FourierLoop a);

/// Discrete Fourier coefficients of samples taken at 2M equispaced angles
/// theta_j = 2 pi j / (2M). Frequencies |k| <= M - 1 are returned; the
/// Nyquist term is dropped.
FourierLoop loop_from_samples(std::span<const CMatrix> samples);
FourierLoop loop_from_samples(std::span<const Complex> samples);

/// Product of two loops, exact on the band K_a + K_b.
FourierLoop loop_product(const FourierLoop& a, const FourierLoop& b);

enum class HardyPart { nonnegative, negative };

/// Keeps the frequencies k >= 0 (resp. k < 0).
FourierLoop hardy_project(const FourierLoop& l, HardyPart part);

struct WindingOptions {
  int samples = 4096;
  double min_modulus = 1e-8;
};

/// Winding number of a closed curve given by samples on an equispaced
/// angular grid, by continuous argument tracking.
int winding_number(std::span<const Complex> samples, double min_modulus = 1e-8);
/// Winding number of a nonvanishing scalar loop.
int winding_number(const FourierLoop& l, const WindingOptions& options = {});

/// Holomorphic function f(z) = sum_j a_j z^j on |z| <= 1 with values in C^n.
class TaylorDisk {
 public:
  TaylorDisk() = default;
  TaylorDisk(Eigen::Index dim, int degree);
  explicit TaylorDisk(std::vector<CVector> coeffs);
  static TaylorDisk scalar(const std::vector<Complex>& coeffs);

  Eigen::Index dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const CVector& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  CVector& coeff(int j) { return coeffs_.at(static_cast<std::size_t>(j)); }
  const std::vector<CVector>& coeffs() const { return coeffs_; }

  /// Horner evaluation, no domain check.
  CVector evaluate(Complex z) const;
  CVector derivative(Complex z) const;
  /// Boundary values as an n x 1 loop supported on k >= 0.
  FourierLoop boundary_trace() const;
  double coeff_norm() const;

  TaylorDisk& operator+=(const TaylorDisk& other);
  TaylorDisk& operator-=(const TaylorDisk& other);

 private:
  Eigen::Index dim_ = 0;
  std::vector<CVector> coeffs_;
};

/// Evaluates f at points of the closed unit disk; points with |z| > 1 are
/// rejected.
std::vector<CVector> eval_disk(const TaylorDisk& f, std::span<const Complex> points);

/// Truncated scalar power-series arithmetic.
using PowerSeries = std::vector<Complex>;
PowerSeries series_product(const PowerSeries& a, const PowerSeries& b, int degree);
/// a / b truncated at `degree`; requires b[0] != 0.
PowerSeries series_quotient(const PowerSeries& a, const PowerSeries& b, int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Polar quadrature grid on the unit disk: Gauss-Legendre in the radius,
/// trapezoid in the angle.
struct DiskGrid {
  int radial = 0;
  int angular = 0;
  std::vector<double> radii;
  std::vector<double> weights;

  static DiskGrid make(int radial, int angular);
  double angle(int j) const { return kTwoPi * j / angular; }
  Complex point(int i, int j) const { return std::polar(radii[static_cast<std::size_t>(i)], angle(j)); }
  std::size_t size() const { return static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(angular) + static_cast<std::size_t>(j);
  }
};

/// Samples of the density of a C^n-valued (0,1)-form phi = density * dzbar
/// on a DiskGrid, stored radius-major.
struct RHSForm {
  DiskGrid grid;
  Eigen::Index dim = 0;
  std::vector<CVector> density;

  static RHSForm sample(const DiskGrid& grid, Eigen::Index dim,
                        const std::function<CVector(Complex)>& density);
  static RHSForm zero(const DiskGrid& grid, Eigen::Index dim);
  void validate() const;
  double max_abs() const;
};

struct PompeiuOptions {
  /// Relative tolerance of the resolution self-check.
  double tolerance = 1e-8;
  /// Radial terms per angular mode; 0 selects radial / 2.
  int radial_terms = 0;
};

/// Smooth particular solution F of dbar F = phi on the disk. Each angular
/// mode of the density is modelled as r^{|k|} Q_k(r^2) with Q_k a
/// Legendre series; F is obtained from the model in closed form, so the
/// model satisfies dbar F = phi_model exactly.
class PompeiuField {
 public:
  Eigen::Index dim() const { return dim_; }
  const DiskGrid& grid() const { return grid_; }

  CVector evaluate(Complex z) const;
  /// Values at the nodes of grid(), radius-major.
  std::vector<CVector> grid_values() const;
  /// Boundary values, exact for the model.
  FourierLoop boundary_trace() const;
  /// The modelled density at z (equals dbar F exactly).
  CVector density(Complex z) const;
  /// max |phi_model - phi| over the grid.
  double fit_residual() const { return fit_residual_; }
  bool is_zero() const { return modes_.empty(); }

 private:
  friend PompeiuField cauchy_pompeiu(const RHSForm& phi, const PompeiuOptions& options);

  struct Mode {
    int frequency = 0;             // angular frequency k of the density mode
    Eigen::MatrixXcd legendre;     // terms x dim, coefficients of Q_k
  };

  Eigen::Index dim_ = 0;
  DiskGrid grid_;
  std::vector<Mode> modes_;
  std::vector<double> sigma_nodes_;
  std::vector<double> sigma_weights_;
  double fit_residual_ = 0.0;
};

/// Particular solution of dbar F = phi with no boundary condition. Throws
/// NumericalFailure when the density is not resolved by the grid.
PompeiuField cauchy_pompeiu(const RHSForm& phi, const PompeiuOptions& options = {});

}  // namespace holodisk
