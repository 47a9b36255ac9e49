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
#include <random>
#include <sstream>

#include "holodisk/errors.hpp"
#include "holodisk/moduli.hpp"

namespace holodisk {

namespace {

int total_degree(const PerturbationTerm& t) {
  int d = 0;
  for (int p : t.powers) d += p;
  return d;
}

template <typename Vec>
auto monomial(const Vec& x, const std::vector<int>& powers) {
  typename Vec::Scalar v = 1.0;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    for (int e = 0; e < powers[j]; ++e) v *= x(static_cast<Eigen::Index>(j));
  }
  return v;
}

}  // namespace

PerturbationSpec PerturbationSpec::cubic_harmonic(int m, double epsilon) {
  PerturbationSpec p;
  p.m = m;
  p.epsilon = epsilon;
  PerturbationTerm t;
  t.component = 0;
  t.powers.assign(static_cast<std::size_t>(m + 2), 0);
  t.powers[0] = t.powers[1] = t.powers[2] = 1;
  t.coeff = 1.0;
  p.terms.push_back(t);
  p.validate();
  return p;
}

PerturbationSpec PerturbationSpec::with_epsilon(double eps) const {
  PerturbationSpec p = *this;
  p.epsilon = eps;
  return p;
}

void PerturbationSpec::validate() const {
  if (m < 1) throw InvalidInput("PerturbationSpec: m must be >= 1");
  if (!std::isfinite(epsilon)) throw InvalidInput("PerturbationSpec: epsilon must be finite");
  for (const auto& t : terms) {
    if (t.component < 0 || t.component >= ambient()) {
      throw InvalidInput("PerturbationSpec: term component outside 0..m+1");
    }
    if (static_cast<int>(t.powers.size()) != ambient()) {
      std::ostringstream msg;
      msg << "PerturbationSpec: term needs " << ambient() << " exponents, got " << t.powers.size();
      throw InvalidInput(msg.str());
    }
    for (int e : t.powers) {
      if (e < 0) throw InvalidInput("PerturbationSpec: negative exponent");
    }
    if (total_degree(t) % 2 == 0) {
      throw InvalidInput("PerturbationSpec: every term must have odd total degree (u must be odd)");
    }
    if (!std::isfinite(t.coeff)) throw InvalidInput("PerturbationSpec: non-finite coefficient");
  }
}

RVector PerturbationSpec::u(const RVector& x) const {
  RVector out = RVector::Zero(ambient());
  for (const auto& t : terms) out(t.component) += t.coeff * monomial(x, t.powers);
  return out;
}

CVector PerturbationSpec::psi(const CVector& xi) const {
  CVector out = xi;
  if (epsilon == 0.0) return out;
  const Complex s = xi.transpose() * xi;
  for (const auto& t : terms) {
    const int q = (total_degree(t) - 1) / 2;
    out(t.component) += Complex(0.0, epsilon) * t.coeff * monomial(xi, t.powers) / std::pow(s, q);
  }
  return out;
}

CMatrix PerturbationSpec::dpsi(const CVector& xi) const {
  const auto n = ambient();
  CMatrix d = CMatrix::Identity(n, n);
  if (epsilon == 0.0) return d;
  const Complex s = xi.transpose() * xi;
  for (const auto& t : terms) {
    const int q = (total_degree(t) - 1) / 2;
    const Complex c = monomial(xi, t.powers);
    const Complex sq = std::pow(s, q);
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex dc = 0.0;
      const int pj = t.powers[static_cast<std::size_t>(j)];
      if (pj > 0) {
        std::vector<int> lowered = t.powers;
        --lowered[static_cast<std::size_t>(j)];
        dc = static_cast<double>(pj) * monomial(xi, lowered);
      }
      const Complex deriv = dc / sq - static_cast<double>(q) * c * 2.0 * xi(j) / (sq * s);
      d(t.component, j) += Complex(0.0, epsilon) * t.coeff * deriv;
    }
  }
  return d;
}

CVector PerturbationSpec::straighten(const CVector& w) const {
  if (epsilon == 0.0) return w;
  const double scale = w.norm();
  if (!(scale > 0.0)) throw InvalidInput("straighten: zero homogeneous vector");
  CVector y = w;
  for (int it = 0; it < 50; ++it) {
    const CVector r = psi(y) - w;
    if (r.norm() <= 1e-15 * scale) return y;
    const CVector dy = dpsi(y).partialPivLu().solve(r);
    y -= dy;
    if (!y.allFinite()) break;
    if (dy.norm() <= 1e-16 * scale) return y;
  }
  const double res = (psi(y) - w).norm();
  if (std::isfinite(res) && res <= 1e-13 * scale) return y;
  std::ostringstream msg;
  msg << "straighten: the map x -> x + i eps u(x) could not be inverted (residual " << res / scale
      << ", eps = " << epsilon << "); eps is too large";
  throw NumericalFailure(msg.str());
}

namespace {

template <typename F>
void for_sphere_samples(Eigen::Index n, int samples, F&& visit) {
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  for (int s = 0; s < samples; ++s) {
    RVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    x.normalize();
    visit(x);
  }
}

}  // namespace

double PerturbationSpec::totally_real_margin(int samples) const {
  if (epsilon == 0.0 || terms.empty()) return 1.0;
  double margin = std::numeric_limits<double>::infinity();
  for_sphere_samples(ambient(), samples, [&](const RVector& x) {
    Eigen::JacobiSVD<CMatrix> svd(dpsi(x.cast<Complex>()));
    margin = std::min(margin, svd.singularValues()(ambient() - 1));
  });
  return margin;
}

double PerturbationSpec::perturbation_strength(int samples) const {
  if (epsilon == 0.0 || terms.empty()) return 0.0;
  const CMatrix identity = CMatrix::Identity(ambient(), ambient());
  double strength = 0.0;
  for_sphere_samples(ambient(), samples, [&](const RVector& x) {
    Eigen::JacobiSVD<CMatrix> svd(dpsi(x.cast<Complex>()) - identity);
    strength = std::max(strength, svd.singularValues()(0));
  });
  return strength;
}

}  // namespace holodisk
