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
// Holomorphic disks in CP_{m+1} with boundary on a perturbed RP^{m+1}:
// half-line disks, Gauss-Newton continuation, moduli charts over oriented
// 2-planes and incidence families.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "holodisk/spectral.hpp"

namespace holodisk {

using RVector = Eigen::VectorXd;

/// One monomial coeff * x^powers in component `component` of u.
struct PerturbationTerm {
  int component = 0;
  std::vector<int> powers;
  double coeff = 0.0;
};

/// P' = {[x + i eps u(x)] : x in S^{m+1}} with u odd and polynomial. The
/// holomorphic extension used for straightening homogenizes each monomial
/// c(xi) of odd degree d as c(xi) / (xi . xi)^{(d-1)/2}, so that
/// Psi(xi) = xi + i eps u(xi) is homogeneous of degree one.
struct PerturbationSpec {
  int m = 1;
  double epsilon = 0.0;
  std::vector<PerturbationTerm> terms;

  /// u_0 = x_0 x_1 x_2, all other components zero.
  static PerturbationSpec cubic_harmonic(int m, double epsilon);
  PerturbationSpec with_epsilon(double eps) const;

  int ambient() const { return m + 2; }
  void validate() const;
  /// u at a real point (no normalization).
  RVector u(const RVector& x) const;
  CVector psi(const CVector& xi) const;
  /// Complex Jacobian of psi.
  CMatrix dpsi(const CVector& xi) const;
  /// Solves psi(y) = w by Newton from y = w.
  CVector straighten(const CVector& w) const;
  /// Smallest singular value of dpsi over `samples` points of the sphere;
  /// P' is maximal totally real when positive.
  double totally_real_margin(int samples = 2000) const;
  /// Largest operator norm of dpsi - I over `samples` points of the sphere.
  /// Below 1/2, psi is a near-identity map and straighten is a contraction.
  double perturbation_strength(int samples = 2000) const;
};

/// F(z) = (u + iv) + (z + a(z))(u - iv) + sum_j b_j(z) w_j with u, v, w_j a
/// real orthonormal basis of R^{m+2}. Fixing the u + iv coefficient to 1
/// removes the rescaling freedom of homogeneous coordinates.
struct DiskMap {
  int m = 1;
  RVector u;
  RVector v;
  Eigen::MatrixXd w;   // (m+2) x m
  CVector a;           // K + 1 coefficients
  Eigen::MatrixXcd b;  // (K+1) x m coefficients

  int truncation() const { return static_cast<int>(a.size()) - 1; }
  /// Homogeneous coordinates as a C^{m+2}-valued Taylor disk.
  TaylorDisk homogeneous() const;
  CVector evaluate(Complex z) const;
  /// Re a_0, Im a_0, Im a_1.
  std::array<double, 3> gauge_values() const;
  /// Max modulus of the correction coefficients a, b.
  double correction_norm() const;
  /// Euclidean norm of all correction coefficients.
  double coefficient_norm() const;
};

/// Real orthonormal completion of span(u, v).
Eigen::MatrixXd orthonormal_completion(const RVector& u, const RVector& v);

/// f(z) = [(1 + z) u + i (1 - z) v].
DiskMap standard_half_line(const RVector& u, const RVector& v, int truncation = 24);

/// Re-expresses homogeneous coordinates F (any common holomorphic scale)
/// in the anchored form relative to (u, v).
DiskMap anchor_disk(const TaylorDisk& f, const RVector& u, const RVector& v, int truncation);

/// Defect of the boundary from P' at each angle: m + 1 values per angle,
/// Im(y_i / y_a) for i != a where y = psi^{-1}(F) and a is the largest
/// coordinate of y. Invariant under rescaling of F.
RVector boundary_residual(const TaylorDisk& f, const PerturbationSpec& p, const std::vector<double>& angles);
RVector boundary_residual(const DiskMap& f, const PerturbationSpec& p, const std::vector<double>& angles);

std::vector<double> uniform_angles(int count, double offset = 0.0);

struct NewtonOptions {
  int truncation = 24;
  /// Collocation angles; 0 selects 4(K + 1).
  int collocation = 0;
  double tolerance = 1e-10;
  /// Verification residual at shifted angles required for success.
  double acceptance = 1e-8;
  int max_iterations = 8;
  int continuation_steps = 2;
  double tau = 1e-8;
};

struct NewtonResult {
  DiskMap disk;
  int iterations = 0;
  int total_iterations = 0;
  /// max |boundary_residual| at angles halfway between collocation angles.
  double residual = 0.0;
  std::vector<double> history;
};

/// Gauss-Newton on the boundary collocation defect with the gauge slices
/// a_0 = 0, Im a_1 = 0 and the node pins b_j(0) = 0 held fixed. Throws
/// NumericalFailure on a rank anomaly or when max_iterations is exceeded.
NewtonResult newton_disk(const DiskMap& f0, const PerturbationSpec& p, const NewtonOptions& options = {});

/// Continuation from the half-line at (u, v) to p.epsilon in uniform steps
/// with a secant predictor.
NewtonResult continue_disk(const RVector& u, const RVector& v, const PerturbationSpec& p,
                           const NewtonOptions& options = {});

/// Real nullities of the collocation linearization at f.
struct LinearizationDims {
  int before_gauge = 0;  // all coefficients free
  int after_gauge = 0;   // a_0, Im a_1 fixed: the moduli tangent dimension
  int pinned = 0;        // additionally b_j(0) fixed
};
LinearizationDims linearization_dims(const DiskMap& f, const PerturbationSpec& p, const NewtonOptions& options = {});

/// Interior point z* with sum_i F_i(z*)^2 = 0 closest to the center, and the
/// unit-normalized homogeneous point F(z*).
struct QuadricPoint {
  Complex parameter = 0.0;
  CVector point;
};
QuadricPoint quadric_point(const DiskMap& f);

/// Coordinates of the oriented plane spanned by Re and Im of the center
/// point F(0): the unit normal (m = 1), self-dual and anti-self-dual parts
/// (m = 2), or the orthonormalized pair (u, v) otherwise.
RVector moduli_coordinates(const DiskMap& f);

/// Oriented plane from m = 2 coordinates (unit self-dual and anti-self-dual
/// vectors).
std::pair<RVector, RVector> plane_from_sd_asd(const Eigen::Vector3d& sd, const Eigen::Vector3d& asd);

enum class GridKind { sphere, sphere_pair, nodes };

struct GridSpec {
  GridKind kind = GridKind::sphere;
  int longitude = 16;
  int latitude = 8;
  /// Explicit (u, v) pairs for GridKind::nodes.
  std::vector<std::pair<RVector, RVector>> nodes;
};

/// Grid nodes as oriented orthonormal pairs, in index order.
std::vector<std::pair<RVector, RVector>> grid_nodes(const GridSpec& grid, int m);
/// Typical angular spacing of the grid.
double grid_spacing(const GridSpec& grid);

struct ChartNode {
  int index = 0;
  RVector u;
  RVector v;
  bool converged = false;
  std::optional<DiskMap> disk;
  int iterations = 0;
  int total_iterations = 0;
  double residual = 0.0;
  int tangent_dim = -1;
  QuadricPoint quadric;
  RVector coordinates;
  std::string message;
};

struct ModuliChart {
  int m = 1;
  PerturbationSpec perturbation;
  GridSpec grid;
  NewtonOptions options;
  std::vector<ChartNode> nodes;
  bool partial = false;
  std::vector<int> failed;
};

struct SweepOptions {
  NewtonOptions newton;
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;
  bool measure_tangent = true;
};

/// Solves every grid node by continuation in epsilon from its half-line.
ModuliChart sweep_moduli(const GridSpec& grid, const PerturbationSpec& p, const SweepOptions& options = {});

struct IncidenceMember {
  int node = 0;
  double theta = 0.0;
  double coarse_distance = 0.0;
  double residual = 0.0;
  DiskMap disk;
  RVector coordinates;
  /// Angular distance of x from the plane of the refined disk.
  double deviation = 0.0;
};

struct IncidenceFamily {
  RVector x;            // y = [psi(x)] in P'
  CVector y;
  double threshold = 0.0;
  std::vector<IncidenceMember> members;  // m = 1: ordered around x
};

struct IncidenceOptions {
  /// Coarse selection threshold; 0 selects 0.6 grid spacings.
  double threshold = 0.0;
  int boundary_samples = 256;
  NewtonOptions newton;
};

/// Disks of the chart passing through y = [psi(x)], refined so that the
/// boundary meets y exactly. Throws NumericalFailure for an empty family.
IncidenceFamily incidence_family(const RVector& x, const ModuliChart& chart, const IncidenceOptions& options = {});

struct NodeCheck {
  int index = 0;
  double coefficient_deviation = 0.0;
  double quadric_defect = 0.0;
  bool ok = false;
};

struct UnperturbedDiagnostics {
  bool passed = false;
  double max_coefficient_deviation = 0.0;
  double max_quadric_defect = 0.0;
  double min_pairwise_distance = 0.0;
  double min_antipodal_distance = 0.0;
  std::vector<NodeCheck> nodes;
  std::vector<std::string> failures;
};

/// Checks an epsilon = 0 chart against the half-lines and the quadric
/// incidence map.
UnperturbedDiagnostics verify_unperturbed(const ModuliChart& chart, double tolerance = 1e-10);

/// Fubini-Study distance between points of CP^{m+1}.
double fubini_study(const CVector& p, const CVector& q);

}  // namespace holodisk
