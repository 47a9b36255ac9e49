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

#include "holodisk/errors.hpp"
#include "holodisk/spectral.hpp"

namespace holodisk {

namespace {

// P_0..P_{terms-1} evaluated at 2t - 1.
Eigen::VectorXd shifted_legendre(double t, int terms) {
  Eigen::VectorXd p(terms);
  const double x = 2.0 * t - 1.0;
  if (terms > 0) p(0) = 1.0;
  if (terms > 1) p(1) = x;
  for (int l = 2; l < terms; ++l) p(l) = ((2.0 * l - 1.0) * x * p(l - 1) - (l - 1.0) * p(l - 2)) / l;
  return p;
}

}  // namespace

PompeiuField cauchy_pompeiu(const RHSForm& phi, const PompeiuOptions& options) {
  phi.validate();
  const DiskGrid& grid = phi.grid;
  const int radial = grid.radial;
  const int angular = grid.angular;
  const Eigen::Index dim = phi.dim;
  const int terms = options.radial_terms > 0 ? options.radial_terms : std::max(1, radial / 2);
  if (terms > radial) throw InvalidInput("cauchy_pompeiu: more radial terms than radial nodes");

  PompeiuField field;
  field.dim_ = dim;
  field.grid_ = grid;

  const double scale = phi.max_abs();
  if (scale == 0.0) return field;

  // Angular modes per radius, including the Nyquist term for the self-check.
  const int half = angular / 2;
  std::vector<Complex> w(static_cast<std::size_t>(angular));
  for (int j = 0; j < angular; ++j) w[static_cast<std::size_t>(j)] = std::polar(1.0, -kTwoPi * j / angular);
  // modes[k + half][i] for k in [-half, half - 1]
  std::vector<std::vector<CVector>> modes(static_cast<std::size_t>(angular),
                                          std::vector<CVector>(static_cast<std::size_t>(radial), CVector::Zero(dim)));
  for (int k = -half; k < half; ++k) {
    for (int i = 0; i < radial; ++i) {
      CVector acc = CVector::Zero(dim);
      for (int j = 0; j < angular; ++j) {
        const long long idx = (static_cast<long long>(k) * j) % angular;
        acc += phi.density[grid.index(i, j)] * w[static_cast<std::size_t>(idx < 0 ? idx + angular : idx)];
      }
      modes[static_cast<std::size_t>(k + half)][static_cast<std::size_t>(i)] = acc / static_cast<double>(angular);
    }
  }

  double top_energy = 0.0;
  for (int k : {-half, -half + 1, half - 1}) {
    for (const auto& v : modes[static_cast<std::size_t>(k + half)]) top_energy = std::max(top_energy, v.norm());
  }

  int kmax = 0;
  for (int k = -half + 1; k < half; ++k) {
    const auto& mk = modes[static_cast<std::size_t>(k + half)];
    double mode_max = 0.0;
    for (const auto& v : mk) mode_max = std::max(mode_max, v.cwiseAbs().maxCoeff());
    if (mode_max <= 1e-15 * scale) continue;

    const int a = std::abs(k);
    Eigen::MatrixXcd design(radial, terms);
    Eigen::MatrixXcd target(radial, dim);
    for (int i = 0; i < radial; ++i) {
      const double r = grid.radii[static_cast<std::size_t>(i)];
      const double sw = std::sqrt(grid.weights[static_cast<std::size_t>(i)] * r);
      design.row(i) = (sw * std::pow(r, a) * shifted_legendre(r * r, terms)).cast<Complex>().transpose();
      target.row(i) = sw * mk[static_cast<std::size_t>(i)].transpose();
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(design);
    PompeiuField::Mode mode;
    mode.frequency = k;
    mode.legendre = cod.solve(target);
    field.modes_.push_back(std::move(mode));
    kmax = std::max(kmax, a);
  }

  const int q = (terms + kmax) / 2 + 2;
  gauss_legendre_unit(q, field.sigma_nodes_, field.sigma_weights_);

  double residual = 0.0;
  for (int i = 0; i < radial; ++i) {
    for (int j = 0; j < angular; ++j) {
      const CVector d = field.density(grid.point(i, j)) - phi.density[grid.index(i, j)];
      residual = std::max(residual, d.cwiseAbs().maxCoeff());
    }
  }
  field.fit_residual_ = residual;

  if (residual > options.tolerance * scale || top_energy > options.tolerance * scale) {
    std::ostringstream msg;
    msg << "cauchy_pompeiu: grid too coarse for the density (relative fit residual " << residual / scale
        << ", relative top-mode energy " << top_energy / scale << ", tolerance " << options.tolerance
        << "); increase the radial or angular resolution";
    throw NumericalFailure(msg.str());
  }
  return field;
}

CVector PompeiuField::density(Complex z) const {
  const double r = std::abs(z);
  const double theta = std::arg(z);
  CVector out = CVector::Zero(dim_);
  for (const auto& m : modes_) {
    const int terms = static_cast<int>(m.legendre.rows());
    const Eigen::VectorXcd p = shifted_legendre(r * r, terms).cast<Complex>();
    const Complex factor = std::pow(r, std::abs(m.frequency)) * std::polar(1.0, m.frequency * theta);
    out += factor * (m.legendre.transpose() * p);
  }
  return out;
}

CVector PompeiuField::evaluate(Complex z) const {
  const double r = std::abs(z);
  const double theta = std::arg(z);
  const double t = r * r;
  CVector out = CVector::Zero(dim_);
  for (const auto& m : modes_) {
    const int k = m.frequency;
    const int terms = static_cast<int>(m.legendre.rows());
    Eigen::VectorXcd integral = Eigen::VectorXcd::Zero(terms);
    for (std::size_t s = 0; s < sigma_nodes_.size(); ++s) {
      const double sigma = sigma_nodes_[s];
      double weight = sigma_weights_[s];
      if (k <= 0) weight *= std::pow(sigma, -k);
      integral += weight * shifted_legendre(t * sigma, terms).cast<Complex>();
    }
    const double radial = k >= 1 ? std::pow(r, k - 1) * t : std::pow(r, 1 - k);
    out += (radial * std::polar(1.0, (k - 1) * theta)) * (m.legendre.transpose() * integral);
  }
  return out;
}

std::vector<CVector> PompeiuField::grid_values() const {
  std::vector<CVector> out;
  out.reserve(grid_.size());
  for (int i = 0; i < grid_.radial; ++i) {
    for (int j = 0; j < grid_.angular; ++j) out.push_back(evaluate(grid_.point(i, j)));
  }
  return out;
}

FourierLoop PompeiuField::boundary_trace() const {
  int order = 0;
  for (const auto& m : modes_) order = std::max(order, std::abs(m.frequency - 1));
  FourierLoop trace(dim_, 1, order);
  for (const auto& m : modes_) {
    const int k = m.frequency;
    const int terms = static_cast<int>(m.legendre.rows());
    Eigen::VectorXcd integral = Eigen::VectorXcd::Zero(terms);
    for (std::size_t s = 0; s < sigma_nodes_.size(); ++s) {
      double weight = sigma_weights_[s];
      if (k <= 0) weight *= std::pow(sigma_nodes_[s], -k);
      integral += weight * shifted_legendre(sigma_nodes_[s], terms).cast<Complex>();
    }
    trace.coeff(k - 1) += m.legendre.transpose() * integral;
  }
  return trace;
}

}  // namespace holodisk
