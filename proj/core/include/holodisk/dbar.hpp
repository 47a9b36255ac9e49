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
// The linear boundary problem dbar f = phi on the unit disk with
// f(e^{i theta}) in E(theta): kernels, cokernels, solutions and
// obstruction certificates.

#pragma once

#include <variant>
#include <vector>

#include "holodisk/boundary.hpp"
#include "holodisk/spectral.hpp"

namespace holodisk {

struct KernelBasis {
  /// Real-linear basis, orthonormal in the real coefficient space.
  std::vector<TaylorDisk> basis;
  int degree = -1;
  double sigma_max = 0.0;
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;

  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Holomorphic f with f = G conj(f) on the circle.
KernelBasis kernel_basis(const GLoop& g, const IndexOptions& options = {});
/// As above, and checks the dimension against h0 of `expected`.
KernelBasis kernel_basis(const GLoop& g, const IndexOptions& options, const PartialIndexReport& expected);

/// Holomorphic g with g = e^{-2i theta} G^H conj(g); each such g defines
/// the real functional r -> Im sum_k g_k^T r_{-1-k}, which annihilates
/// the range of f -> f - G conj(f).
KernelBasis cokernel_basis(const GLoop& g, const IndexOptions& options = {});

/// dim kernel - dim cokernel of the truncated problem.
int numerical_index(const GLoop& g, const IndexOptions& options = {});

/// Value of the cokernel functional defined by `g` on an n x 1 loop.
double cokernel_pairing(const TaylorDisk& g, const FourierLoop& r);

struct LinearBVP {
  GLoop condition;
  RHSForm rhs;
  int truncation = 32;
  /// Boundary collocation count 2M; 0 selects 2(2K + n).
  int collocation = 0;
  double tau = 1e-8;
  /// Normalized least-squares residual above which the problem is reported
  /// as obstructed.
  double obstruction_tolerance = 1e-6;
  double boundary_tolerance = 1e-8;
  PompeiuOptions pompeiu;
};

struct DiskSolution {
  /// Holomorphic correction; the full solution is particular + holomorphic.
  TaylorDisk holomorphic;
  PompeiuField particular;
  std::vector<CVector> grid_values;
  /// max |dbar f - phi| over the grid (Pompeiu model fit residual).
  double interior_residual = 0.0;
  /// max |f - G conj(f)| at the collocation angles.
  double boundary_residual = 0.0;
  double normalized_residual = 0.0;
  /// Coefficients of the holomorphic part against the kernel basis.
  Eigen::VectorXd kernel_projection;

  CVector evaluate(Complex z) const;
};

struct Obstructed {
  int dimension = 0;
  /// Cokernel functionals (see cokernel_basis).
  std::vector<TaylorDisk> functionals;
  /// Value of each functional on the boundary defect of the particular solution.
  Eigen::VectorXd pairings;
  double normalized_residual = 0.0;
};

using BVPResult = std::variant<DiskSolution, Obstructed>;

/// Least-squares solution of the boundary problem with minimum norm (no
/// kernel component), or an obstruction certificate when the normalized
/// residual exceeds the obstruction tolerance.
BVPResult solve_bvp(const LinearBVP& problem);

struct StraightenedFrame {
  /// B^{-1} as a loop; the condition reads Im(B^{-1} f) = 0.
  FourierLoop inverse;
  GLoop gloop;
  /// max |B^{-1} G conj(B) - I| on a dense grid.
  double consistency_residual = 0.0;
};

StraightenedFrame straighten_frame(const BoundaryFrame& b);

/// Kernel computed in the frame formulation by collocating Im(B^{-1} f) = 0.
KernelBasis frame_kernel_basis(const BoundaryFrame& b, const IndexOptions& options = {});

/// Largest principal-angle sine between the real spans of two families of
/// Taylor disks; 1 when the dimensions differ.
double subspace_distance(const std::vector<TaylorDisk>& a, const std::vector<TaylorDisk>& b);

}  // namespace holodisk
