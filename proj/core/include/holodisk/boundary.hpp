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
// Totally real boundary conditions on the unit circle, their clutching
// loops G = B conj(B)^{-1}, and the partial-index / Maslov data.

#pragma once

#include <functional>
#include <vector>

#include "holodisk/spectral.hpp"

namespace holodisk {

/// Frame B(theta) of the fibers E(theta) = B(theta) R^n.
class BoundaryFrame {
 public:
  /// Validates that B is square and invertible (smallest singular value
  /// above min_singular) on a dense angle grid.
  static BoundaryFrame from_loop(FourierLoop b, double min_singular = 1e-8);
  /// Samples a frame given pointwise; rejects functions that are not
  /// single-valued on the circle (B(2 pi) != B(0)).
  static BoundaryFrame from_function(const std::function<CMatrix(double)>& b, int samples = 256,
                                     double min_singular = 1e-8);

  const FourierLoop& loop() const { return b_; }
  Eigen::Index size() const { return b_.rows(); }
  double min_singular_value() const { return min_singular_; }

 private:
  FourierLoop b_;
  double min_singular_ = 0.0;
};

/// Loop G with G conj(G) = I; the boundary condition reads f = G conj(f).
class GLoop {
 public:
  GLoop() = default;
  /// Validates G conj(G) = I and |det G| = 1 to `tol` on a dense grid.
  explicit GLoop(FourierLoop g, double tol = 1e-9);

  const FourierLoop& loop() const { return g_; }
  Eigen::Index size() const { return g_.rows(); }
  /// Band of the coefficients above 1e-15 relative.
  int effective_order() const { return effective_order_; }
  /// max over a dense grid of |G conj(G) - I|.
  double reality_defect() const { return defect_; }
  /// G^H, again a G-loop.
  GLoop adjoint() const;

 private:
  FourierLoop g_;
  int effective_order_ = 0;
  double defect_ = 0.0;
};

/// G = B conj(B)^{-1}, computed from samples and truncated once the tail
/// falls below 1e-15; G conj(G) = I is verified to 1e-10.
GLoop frame_to_gloop(const BoundaryFrame& b);

/// Winding number of det G.
int maslov_index(const GLoop& g);

/// Outcome of a relative rank decision sigma_i >= tau * sigma_max.
struct RankDecision {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index rank = 0;
  Eigen::Index nullity = 0;
  double sigma_max = 0.0;
  double smallest_kept = 0.0;    // 0 if rank == 0
  double largest_dropped = 0.0;  // 0 if nullity == 0
  Eigen::MatrixXd null_space;    // cols x nullity, orthonormal
  Eigen::MatrixXd singular_vectors;  // full V when requested
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd left_vectors;  // thin U when requested
};

/// SVD rank decision. Throws NumericalFailure when a singular value falls
/// within two decades of the cutoff on either side.
RankDecision decide_rank(const Eigen::MatrixXd& a, double tau, bool want_vectors = true);

/// The real-linear map a -> f - e^{-i shift theta} G conj(f) on holomorphic
/// polynomials f = sum_{k <= degree} a_k z^k, written in the Fourier basis of
/// the residual. Unknowns are ordered (k, component, re/im); equations are
/// ordered (frequency, component, re/im).
class TwistedProblem {
 public:
  TwistedProblem(const FourierLoop& g, int shift, int degree, int window_low, int window_high);

  /// Homogeneous problem with the exact degree bound min(truncation,
  /// K_G - shift); degree() < 0 means the solution space is trivial.
  static TwistedProblem homogeneous(const GLoop& g, int shift, int truncation);

  int shift() const { return shift_; }
  int degree() const { return degree_; }
  int window_low() const { return lo_; }
  int window_high() const { return hi_; }
  Eigen::Index dim() const { return n_; }
  /// True when the truncation, not the loop, limits the degree.
  bool truncation_binds() const { return binds_; }

  Eigen::Index unknowns() const { return 2 * n_ * (degree_ + 1); }
  Eigen::Index equations() const { return 2 * n_ * (hi_ - lo_ + 1); }
  const Eigen::MatrixXd& matrix() const { return a_; }

  /// Residual coefficients of a loop (n x 1) on the window; frequencies
  /// outside the window must vanish.
  Eigen::VectorXd pack_loop(const FourierLoop& r) const;
  TaylorDisk unpack(const Eigen::VectorXd& x) const;
  Eigen::VectorXd pack(const TaylorDisk& f) const;

 private:
  Eigen::Index n_ = 0;
  int shift_ = 0;
  int degree_ = -1;
  int lo_ = 0;
  int hi_ = -1;
  bool binds_ = false;
  Eigen::MatrixXd a_;
};

/// Real dimension N(m) of holomorphic f with f = e^{-im theta} G conj(f).
struct ScanRow {
  int shift = 0;
  int dimension = 0;
  int degree = -1;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  double sigma_max = 0.0;
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  bool truncation_binds = false;
};

struct IndexOptions {
  int truncation = 64;
  double tau = 1e-8;
};

struct PartialIndexReport {
  std::vector<int> indices;  // ascending
  int maslov = 0;
  bool regular = false;
  int h0 = 0;
  int h1 = 0;
  int truncation = 0;
  double tau = 0.0;
  std::vector<ScanRow> scan;  // ascending shift
};

/// N(m) for a single shift.
ScanRow kernel_dimension(const GLoop& g, int shift, const IndexOptions& options = {});

/// Partial indices by a kernel-dimension scan over shifts with
/// second-difference reconstruction. Throws NumericalFailure when the scan
/// does not saturate or the truncation changes the table, and
/// InvariantViolation when the indices contradict the Maslov index or N(0).
PartialIndexReport partial_indices(const GLoop& g, const IndexOptions& options = {});

/// Builds the report fields implied by an index multiset.
PartialIndexReport report_from_indices(std::vector<int> indices);

int h0_of(const std::vector<int>& indices);
int h1_of(const std::vector<int>& indices);

bool is_fredholm_regular(const PartialIndexReport& report);

/// Scalar factorization G = theta_plus * e^{ij theta} * theta_minus with
/// theta_plus holomorphic inside and theta_minus holomorphic outside.
struct BirkhoffFactors {
  int index = 0;
  FourierLoop theta_plus;
  FourierLoop theta_minus;
  double reconstruction_residual = 0.0;
  double plus_leak = 0.0;   // largest negative-frequency coefficient of theta_plus
  double minus_leak = 0.0;  // largest positive-frequency coefficient of theta_minus
};

BirkhoffFactors birkhoff_scalar(const GLoop& g, int samples = 0);

}  // namespace holodisk
