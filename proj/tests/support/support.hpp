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
// Shared oracles for the unit and acceptance suites.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "holodisk/boundary.hpp"
#include "holodisk/dbar.hpp"
#include "holodisk/spectral.hpp"

namespace holodisk::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  return {nd(rng), nd(rng)};
}

inline CMatrix random_cmatrix(Rng& rng, Eigen::Index n, Eigen::Index m) {
  CMatrix a(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = random_complex(rng);
  return a;
}

inline std::vector<int> random_indices(Rng& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<int> js(static_cast<std::size_t>(n));
  for (auto& j : js) j = d(rng);
  return js;
}

/// I + sum_{k=1}^{degree} A_k z^k with sum |A_k|_2 = norm (< 1 keeps it
/// invertible on the closed disk).
inline FourierLoop random_disk_unit(Rng& rng, Eigen::Index n, int degree, double norm) {
  FourierLoop t(n, n, degree);
  t.coeff(0) = CMatrix::Identity(n, n);
  std::vector<CMatrix> parts;
  double total = 0.0;
  for (int k = 1; k <= degree; ++k) {
    parts.push_back(random_cmatrix(rng, n, n));
    total += parts.back().operatorNorm();
  }
  for (int k = 1; k <= degree; ++k) t.coeff(k) = parts[static_cast<std::size_t>(k - 1)] * (norm / total);
  return t;
}

/// Pointwise inverse as a loop, trimmed at 1e-15 relative.
inline FourierLoop loop_inverse(const FourierLoop& l, int samples = 512) {
  std::vector<CMatrix> vals = l.sample(samples);
  for (auto& v : vals) v = v.inverse().eval();
  return loop_from_samples(std::span<const CMatrix>(vals)).trimmed(1e-15);
}

/// Theta G conj(Theta)^{-1}: same splitting type as G.
inline GLoop conjugate_by(const GLoop& g, const FourierLoop& theta) {
  return GLoop(loop_product(loop_product(theta, g.loop()), loop_inverse(theta.conjugate())));
}

inline GLoop diagonal_gloop(const std::vector<int>& js) { return GLoop(FourierLoop::diagonal_monomials(js)); }

/// Diagonal loop with indices in [lo, hi] conjugated by a random disk unit.
struct RandomCondition {
  std::vector<int> indices;
  GLoop g;
};

inline RandomCondition random_condition(Rng& rng, int n, int lo, int hi, double norm = 0.3, int degree = 1) {
  RandomCondition c{random_indices(rng, n, lo, hi), {}};
  c.g = conjugate_by(diagonal_gloop(c.indices), random_disk_unit(rng, n, degree, norm));
  return c;
}

/// Central-difference dbar = (d/dx + i d/dy) / 2.
inline CVector fd_dbar(const std::function<CVector(Complex)>& f, Complex z, double h = 1e-4) {
  const CVector fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const CVector fy = (f(z + Complex(0, h)) - f(z - Complex(0, h))) / (2.0 * h);
  return 0.5 * (fx + Complex(0, 1) * fy);
}

/// Fourth-order variant for tight checks.
inline CVector fd_dbar4(const std::function<CVector(Complex)>& f, Complex z, double h = 1e-3) {
  auto d = [&](Complex e) -> CVector { return (-f(z + 2.0 * e) + 8.0 * f(z + e) - 8.0 * f(z - e) + f(z - 2.0 * e)) / (12.0 * h); };
  return 0.5 * (d(Complex(h, 0)) + Complex(0, 1) * d(Complex(0, h)));
}

/// Bivariate polynomial sum c_pq z^p conj(z)^q, vector valued.
struct BivariatePoly {
  struct Term {
    int p = 0, q = 0;
    CVector c;
  };
  Eigen::Index dim = 1;
  std::vector<Term> terms;

  static BivariatePoly random(Rng& rng, Eigen::Index dim, int degree, double scale = 1.0) {
    BivariatePoly b{dim, {}};
    for (int p = 0; p <= degree; ++p)
      for (int q = 0; p + q <= degree; ++q) {
        CVector c(dim);
        for (Eigen::Index i = 0; i < dim; ++i) c(i) = random_complex(rng, scale);
        b.terms.push_back({p, q, c});
      }
    return b;
  }
  CVector operator()(Complex z) const {
    CVector v = CVector::Zero(dim);
    for (const auto& t : terms) v += t.c * (std::pow(z, t.p) * std::pow(std::conj(z), t.q));
    return v;
  }
  /// Exact dbar.
  CVector dbar(Complex z) const {
    CVector v = CVector::Zero(dim);
    for (const auto& t : terms)
      if (t.q > 0) v += t.c * (static_cast<double>(t.q) * std::pow(z, t.p) * std::pow(std::conj(z), t.q - 1));
    return v;
  }
};

/// F = (1 - |z|^2) P + |z|^2 k1 + k2 satisfies F = G conj(F) on the circle
/// whenever k1, k2 lie in the kernel; dbar F = -z P + (1-|z|^2) dbar P + z k1.
struct Manufactured {
  BivariatePoly p;
  TaylorDisk k1, k2;

  CVector value(Complex z) const {
    const double r2 = std::norm(z);
    return (1.0 - r2) * p(z) + r2 * k1.evaluate(z) + k2.evaluate(z);
  }
  CVector density(Complex z) const {
    return -z * p(z) + (1.0 - std::norm(z)) * p.dbar(z) + z * k1.evaluate(z);
  }
};

inline TaylorDisk random_kernel_element(Rng& rng, const KernelBasis& kb, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  TaylorDisk out(dim, std::max(kb.degree, 0));
  for (const auto& b : kb.basis) {
    const double c = nd(rng);
    for (int k = 0; k <= b.degree(); ++k) out.coeff(k) += c * b.coeff(k);
  }
  return out;
}

inline Manufactured random_manufactured(Rng& rng, const KernelBasis& kb, Eigen::Index dim, int degree) {
  return {BivariatePoly::random(rng, dim, degree, 0.5), random_kernel_element(rng, kb, dim),
          random_kernel_element(rng, kb, dim)};
}

/// Least-squares distance of samples of d from span_R(basis), relative to
/// the sample scale of d (absolute when d is tiny).
inline double kernel_span_residual(const std::function<CVector(Complex)>& d, const std::vector<TaylorDisk>& basis,
                                   Eigen::Index dim, int samples = 48) {
  std::vector<Complex> pts;
  for (int i = 0; i < samples; ++i) {
    const double r = 0.3 + 0.7 * (i % 4) / 3.0;
    pts.push_back(std::polar(r, kTwoPi * (i * 0.618034)));
  }
  const Eigen::Index rows = 2 * dim * samples;
  Eigen::VectorXd rhs(rows);
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(basis.size()));
  for (int s = 0; s < samples; ++s) {
    const CVector v = d(pts[static_cast<std::size_t>(s)]);
    for (Eigen::Index i = 0; i < dim; ++i) {
      rhs(2 * (s * dim + i)) = v(i).real();
      rhs(2 * (s * dim + i) + 1) = v(i).imag();
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const CVector w = basis[b].evaluate(pts[static_cast<std::size_t>(s)]);
      for (Eigen::Index i = 0; i < dim; ++i) {
        a(2 * (s * dim + i), static_cast<Eigen::Index>(b)) = w(i).real();
        a(2 * (s * dim + i) + 1, static_cast<Eigen::Index>(b)) = w(i).imag();
      }
    }
  }
  if (basis.empty()) return rhs.cwiseAbs().maxCoeff();
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(rhs);
  return (a * x - rhs).cwiseAbs().maxCoeff();
}

}  // namespace holodisk::testing
