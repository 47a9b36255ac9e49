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

#include "holodisk/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holodisk/errors.hpp"

namespace holodisk {

namespace {

int dense_count(int order) {
  int count = 256;
  while (count < 8 * (order + 1)) count *= 2;
  return count;
}

double min_singular(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

constexpr double kTrim = 1e-15;

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryFrame

BoundaryFrame BoundaryFrame::from_loop(FourierLoop b, double min_singular_threshold) {
  if (b.rows() != b.cols()) throw InvalidInput("BoundaryFrame: frame must be square");
  const auto values = b.sample(dense_count(b.order()));
  double smallest = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double s = min_singular(values[j]);
    if (s < smallest) {
      smallest = s;
      worst = j;
    }
  }
  if (!(smallest > min_singular_threshold)) {
    std::ostringstream msg;
    msg << "BoundaryFrame: frame is singular at theta = " << kTwoPi * static_cast<double>(worst) / values.size()
        << " (smallest singular value " << smallest << " <= " << min_singular_threshold
        << "); the boundary condition is not maximal totally real";
    throw InvalidInput(msg.str());
  }
  BoundaryFrame f;
  f.b_ = std::move(b);
  f.min_singular_ = smallest;
  return f;
}

BoundaryFrame BoundaryFrame::from_function(const std::function<CMatrix(double)>& b, int samples,
                                           double min_singular_threshold) {
  if (samples < 4 || samples % 2 != 0) throw InvalidInput("BoundaryFrame: need an even sample count >= 4");
  const CMatrix start = b(0.0);
  const CMatrix end = b(kTwoPi);
  if ((start - end).norm() > 1e-10 * std::max(1.0, start.norm())) {
    throw InvalidInput(
        "BoundaryFrame: frame is not single-valued on the circle (B(2 pi) != B(0)); encode the condition as a "
        "G-loop instead");
  }
  std::vector<CMatrix> values;
  values.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) values.push_back(b(kTwoPi * j / samples));
  return from_loop(loop_from_samples(std::span<const CMatrix>(values)).trimmed(kTrim), min_singular_threshold);
}

// ---------------------------------------------------------------------------
// GLoop

GLoop::GLoop(FourierLoop g, double tol) {
  if (g.rows() != g.cols() || g.rows() == 0) throw InvalidInput("GLoop: loop must be square");
  g_ = g.trimmed(kTrim);
  effective_order_ = g_.order();
  const auto values = g_.sample(dense_count(g_.order()));
  const auto n = g_.rows();
  double defect = 0.0;
  double det_defect = 0.0;
  for (const auto& v : values) {
    defect = std::max(defect, (v * v.conjugate() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    det_defect = std::max(det_defect, std::abs(std::abs(v.determinant()) - 1.0));
  }
  defect_ = defect;
  if (!(defect <= tol) || !(det_defect <= tol)) {
    std::ostringstream msg;
    msg << "GLoop: G conj(G) = I violated (max defect " << defect << ", |det G| - 1 up to " << det_defect
        << ", tolerance " << tol << ")";
    throw InvalidInput(msg.str());
  }
}

GLoop GLoop::adjoint() const {
  GLoop out;
  out.g_ = g_.adjoint();
  out.effective_order_ = effective_order_;
  out.defect_ = defect_;
  return out;
}

GLoop frame_to_gloop(const BoundaryFrame& b) {
  const auto n = b.size();
  int count = 64;
  while (count < 8 * (b.loop().order() + 1)) count *= 2;
  for (; count <= 16384; count *= 2) {
    const auto values = b.loop().sample(count);
    std::vector<CMatrix> g(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      g[j] = values[j] * values[j].conjugate().partialPivLu().inverse();
    }
    FourierLoop loop = loop_from_samples(std::span<const CMatrix>(g));
    if (loop.effective_order(kTrim) < count / 4) {
      GLoop out(loop.trimmed(kTrim));
      if (!(out.reality_defect() <= 1e-10)) {
        std::ostringstream msg;
        msg << "frame_to_gloop: G conj(G) = I holds only to " << out.reality_defect() << " (tolerance 1e-10)";
        throw NumericalFailure(msg.str());
      }
      (void)n;
      return out;
    }
  }
  throw NumericalFailure("frame_to_gloop: clutching loop not resolved with 16384 samples; frame nearly singular");
}

int maslov_index(const GLoop& g) {
  const auto values = g.loop().sample(std::max(4096, dense_count(g.loop().order())));
  std::vector<Complex> det(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) det[j] = values[j].determinant();
  return winding_number(std::span<const Complex>(det), 1e-8);
}

// ---------------------------------------------------------------------------
// Index bookkeeping

int h0_of(const std::vector<int>& indices) {
  int s = 0;
  for (int j : indices) s += std::max(j + 1, 0);
  return s;
}

int h1_of(const std::vector<int>& indices) {
  int s = 0;
  for (int j : indices) s += std::max(-j - 1, 0);
  return s;
}

PartialIndexReport report_from_indices(std::vector<int> indices) {
  if (indices.empty()) throw InvalidInput("report_from_indices: empty index multiset");
  std::sort(indices.begin(), indices.end());
  PartialIndexReport r;
  r.maslov = 0;
  for (int j : indices) r.maslov += j;
  r.h0 = h0_of(indices);
  r.h1 = h1_of(indices);
  r.regular = indices.front() >= -1;
  r.indices = std::move(indices);
  return r;
}

bool is_fredholm_regular(const PartialIndexReport& report) {
  if (report.indices.empty()) throw InvalidInput("is_fredholm_regular: empty report");
  const bool by_min = *std::min_element(report.indices.begin(), report.indices.end()) >= -1;
  if (by_min != (h1_of(report.indices) == 0)) throw InvariantViolation("is_fredholm_regular: h1 inconsistent");
  return by_min;
}

// ---------------------------------------------------------------------------
// Scalar Birkhoff factorization

BirkhoffFactors birkhoff_scalar(const GLoop& g, int samples) {
  if (g.size() != 1) throw InvalidInput("birkhoff_scalar: loop must be scalar");
  const int count = samples > 0 ? samples : std::max(512, dense_count(g.loop().order()));
  if (count % 2 != 0) throw InvalidInput("birkhoff_scalar: sample count must be even");

  BirkhoffFactors out;
  out.index = winding_number(g.loop());
  const auto values = g.loop().sample(count);

  std::vector<Complex> log_values(static_cast<std::size_t>(count));
  double arg = 0.0;
  Complex previous = 0.0;
  for (int j = 0; j < count; ++j) {
    const Complex v = values[static_cast<std::size_t>(j)](0, 0) * std::polar(1.0, -out.index * kTwoPi * j / count);
    if (j == 0) {
      arg = std::arg(v);
    } else {
      const double step = std::arg(v / previous);
      if (std::abs(step) > kPi / 2) {
        throw NumericalFailure("birkhoff_scalar: logarithm branch tracking failed (argument jump > pi/2)");
      }
      arg += step;
    }
    previous = v;
    log_values[static_cast<std::size_t>(j)] = Complex(std::log(std::abs(v)), arg);
  }
  const FourierLoop h = loop_from_samples(std::span<const Complex>(log_values));
  const FourierLoop hp = hardy_project(h, HardyPart::nonnegative);
  const FourierLoop hm = hardy_project(h, HardyPart::negative);

  auto exponentiate = [count](const FourierLoop& l) {
    const auto v = l.sample(count);
    std::vector<Complex> e(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) e[j] = std::exp(v[j](0, 0));
    return loop_from_samples(std::span<const Complex>(e)).trimmed(kTrim);
  };
  out.theta_plus = exponentiate(hp);
  out.theta_minus = exponentiate(hm);

  for (int k = 1; k <= out.theta_plus.order(); ++k) {
    out.plus_leak = std::max(out.plus_leak, std::abs(out.theta_plus.coeff(-k)(0, 0)));
  }
  for (int k = 1; k <= out.theta_minus.order(); ++k) {
    out.minus_leak = std::max(out.minus_leak, std::abs(out.theta_minus.coeff(k)(0, 0)));
  }
  double residual = 0.0;
  for (int j = 0; j < count; ++j) {
    const double theta = kTwoPi * (j + 0.5) / count;
    const Complex rebuilt =
        out.theta_plus.evaluate_scalar(theta) * std::polar(1.0, out.index * theta) * out.theta_minus.evaluate_scalar(theta);
    residual = std::max(residual, std::abs(rebuilt - g.loop().evaluate_scalar(theta)));
  }
  out.reconstruction_residual = residual;
  return out;
}

}  // namespace holodisk
