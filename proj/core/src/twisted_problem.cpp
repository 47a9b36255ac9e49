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
#include <map>
#include <sstream>

#include "holodisk/boundary.hpp"
#include "holodisk/errors.hpp"

namespace holodisk {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

RankDecision decide_rank(const Eigen::MatrixXd& a, double tau, bool want_vectors) {
  RankDecision d;
  d.rows = a.rows();
  d.cols = a.cols();
  if (a.cols() == 0) return d;
  if (a.rows() == 0) {
    d.nullity = a.cols();
    if (want_vectors) {
      d.null_space = Eigen::MatrixXd::Identity(a.cols(), a.cols());
      d.singular_vectors = d.null_space;
    }
    return d;
  }
  const unsigned flags = want_vectors ? (Eigen::ComputeThinU | Eigen::ComputeFullV) : 0u;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, flags);
  const Eigen::VectorXd& s = svd.singularValues();
  d.singular_values = s;
  d.sigma_max = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tau * d.sigma_max;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (d.sigma_max > 0.0 && s(i) >= cutoff) ++rank;
    if (d.sigma_max > 0.0) {
      const double ratio = s(i) / d.sigma_max;
      if (ratio >= tau / 100.0 && ratio <= tau * 100.0) {
        std::ostringstream msg;
        msg << "rank decision ambiguous: singular value ratio " << ratio << " lies within two decades of the cutoff "
            << tau << " (" << a.rows() << "x" << a.cols() << " system)";
        throw NumericalFailure(msg.str());
      }
    }
  }
  d.rank = rank;
  d.nullity = a.cols() - rank;
  d.smallest_kept = rank > 0 ? s(rank - 1) : 0.0;
  d.largest_dropped = rank < s.size() ? s(rank) : 0.0;
  if (want_vectors) {
    d.singular_vectors = svd.matrixV();
    d.left_vectors = svd.matrixU();
    d.null_space = svd.matrixV().rightCols(d.nullity);
  }
  return d;
}

// ---------------------------------------------------------------------------
// TwistedProblem

TwistedProblem::TwistedProblem(const FourierLoop& g, int shift, int degree, int window_low, int window_high)
    : n_(g.rows()), shift_(shift), degree_(degree), lo_(window_low), hi_(window_high) {
  if (g.rows() != g.cols()) throw InvalidInput("TwistedProblem: loop must be square");
  if (degree < 0) {
    degree_ = -1;
    a_.resize(equations() > 0 ? equations() : 0, 0);
    return;
  }
  if (lo_ > 0 || hi_ < degree_) throw InvalidInput("TwistedProblem: window must contain [0, degree]");
  const int kg = g.order();
  a_ = Eigen::MatrixXd::Zero(equations(), unknowns());
  auto col = [this](int k, Eigen::Index c, int part) { return (k * n_ + c) * 2 + part; };
  auto row = [this](int l, Eigen::Index r, int part) { return ((l - lo_) * n_ + r) * 2 + part; };
  for (int k = 0; k <= degree_; ++k) {
    for (Eigen::Index c = 0; c < n_; ++c) {
      a_(row(k, c, 0), col(k, c, 0)) += 1.0;
      a_(row(k, c, 1), col(k, c, 1)) += 1.0;
      for (int p = -kg; p <= kg; ++p) {
        const int l = p - shift_ - k;
        const CMatrix& gp = g.coeff(p);
        if (l < lo_ || l > hi_) {
          if (gp.col(c).norm() == 0.0) continue;
          throw InvalidInput("TwistedProblem: window does not cover the loop support");
        }
        for (Eigen::Index r = 0; r < n_; ++r) {
          const Complex v = gp(r, c);
          a_(row(l, r, 0), col(k, c, 0)) -= v.real();
          a_(row(l, r, 1), col(k, c, 0)) -= v.imag();
          a_(row(l, r, 0), col(k, c, 1)) -= v.imag();
          a_(row(l, r, 1), col(k, c, 1)) += v.real();
        }
      }
    }
  }
}

TwistedProblem TwistedProblem::homogeneous(const GLoop& g, int shift, int truncation) {
  if (truncation < 0) throw InvalidInput("TwistedProblem: truncation must be nonnegative");
  const int kg = g.loop().order();
  const int cap = kg - shift;
  const int degree = std::min(truncation, cap);
  if (degree < 0) {
    TwistedProblem p(g.loop(), shift, -1, 0, -1);
    return p;
  }
  TwistedProblem p(g.loop(), shift, degree, std::min(0, -kg - shift - degree), std::max(degree, kg - shift));
  p.binds_ = truncation < cap;
  return p;
}

Eigen::VectorXd TwistedProblem::pack_loop(const FourierLoop& r) const {
  if (r.rows() != n_ || r.cols() != 1) throw InvalidInput("TwistedProblem::pack_loop: shape mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(equations());
  const double cutoff = 1e-14 * r.max_coeff_norm();
  for (int l = -r.order(); l <= r.order(); ++l) {
    const CMatrix& c = r.coeff(l);
    if (l < lo_ || l > hi_) {
      if (c.norm() > cutoff) throw InvalidInput("TwistedProblem::pack_loop: loop exceeds the equation window");
      continue;
    }
    for (Eigen::Index i = 0; i < n_; ++i) {
      out(((l - lo_) * n_ + i) * 2) = c(i, 0).real();
      out(((l - lo_) * n_ + i) * 2 + 1) = c(i, 0).imag();
    }
  }
  return out;
}

TaylorDisk TwistedProblem::unpack(const Eigen::VectorXd& x) const {
  if (x.size() != unknowns()) throw InvalidInput("TwistedProblem::unpack: size mismatch");
  TaylorDisk f(n_, std::max(degree_, 0));
  for (int k = 0; k <= degree_; ++k) {
    for (Eigen::Index c = 0; c < n_; ++c) {
      f.coeff(k)(c) = Complex(x((k * n_ + c) * 2), x((k * n_ + c) * 2 + 1));
    }
  }
  return f;
}

Eigen::VectorXd TwistedProblem::pack(const TaylorDisk& f) const {
  if (f.dim() != n_) throw InvalidInput("TwistedProblem::pack: dimension mismatch");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(unknowns());
  for (int k = 0; k <= std::min(degree_, f.degree()); ++k) {
    for (Eigen::Index c = 0; c < n_; ++c) {
      x((k * n_ + c) * 2) = f.coeff(k)(c).real();
      x((k * n_ + c) * 2 + 1) = f.coeff(k)(c).imag();
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Scan

ScanRow kernel_dimension(const GLoop& g, int shift, const IndexOptions& options) {
  if (!(options.tau > 0.0)) throw InvalidInput("kernel_dimension: tau must be positive");
  const TwistedProblem p = TwistedProblem::homogeneous(g, shift, options.truncation);
  ScanRow row;
  row.shift = shift;
  row.degree = p.degree();
  row.truncation_binds = p.truncation_binds();
  row.rows = p.equations();
  row.cols = p.unknowns();
  if (p.unknowns() == 0) return row;
  const RankDecision d = decide_rank(p.matrix(), options.tau, false);
  row.dimension = static_cast<int>(d.nullity);
  row.sigma_max = d.sigma_max;
  row.smallest_kept = d.smallest_kept;
  row.largest_dropped = d.largest_dropped;
  return row;
}

PartialIndexReport partial_indices(const GLoop& g, const IndexOptions& options) {
  if (options.truncation < 1) throw InvalidInput("partial_indices: truncation must be >= 1");
  const int n = static_cast<int>(g.size());
  const int mu = maslov_index(g);

  std::map<int, ScanRow> table;
  auto N = [&](int m) {
    auto it = table.find(m);
    if (it == table.end()) it = table.emplace(m, kernel_dimension(g, m, options)).first;
    return it->second.dimension;
  };

  int lo = floor_div(mu, n) - n - 1;
  int hi = ceil_div(mu, n) + n + 1;
  const int limit = 4 * options.truncation + 4 * g.loop().order() + 16;
  for (int step = 0;; ++step) {
    if (step > limit) {
      std::ostringstream msg;
      msg << "partial_indices: scan did not saturate within shifts [" << lo << ", " << hi
          << "]; increase the truncation (K = " << options.truncation << ")";
      throw NumericalFailure(msg.str());
    }
    if (N(hi) != 0) {
      ++hi;
      continue;
    }
    if (N(lo - 1) - N(lo) != n) {
      --lo;
      continue;
    }
    N(hi + 1);
    break;
  }

  std::vector<int> indices;
  for (int m = lo; m <= hi; ++m) {
    const int mult = N(m - 1) - 2 * N(m) + N(m + 1);
    if (mult < 0) {
      std::ostringstream msg;
      msg << "partial_indices: negative second difference at shift " << m << "; scan table inconsistent";
      throw NumericalFailure(msg.str());
    }
    for (int i = 0; i < mult; ++i) indices.push_back(m - 1);
  }
  if (static_cast<int>(indices.size()) != n) {
    std::ostringstream msg;
    msg << "partial_indices: scan reconstructs " << indices.size() << " indices for rank " << n
        << "; increase the truncation (K = " << options.truncation << ")";
    throw NumericalFailure(msg.str());
  }

  bool any_binds = false;
  for (const auto& [m, row] : table) any_binds = any_binds || row.truncation_binds;
  if (any_binds) {
    IndexOptions doubled = options;
    doubled.truncation = 2 * options.truncation;
    for (const auto& [m, row] : table) {
      if (!row.truncation_binds) continue;
      const ScanRow check = kernel_dimension(g, m, doubled);
      if (check.dimension != row.dimension) {
        std::ostringstream msg;
        msg << "partial_indices: N(" << m << ") changes from " << row.dimension << " to " << check.dimension
            << " when the truncation is doubled; K = " << options.truncation << " is too small";
        throw NumericalFailure(msg.str());
      }
    }
  }

  PartialIndexReport report = report_from_indices(indices);
  if (report.maslov != mu) {
    std::ostringstream msg;
    msg << "partial_indices: sum of indices " << report.maslov << " differs from the Maslov index " << mu;
    throw InvariantViolation(msg.str());
  }
  for (const auto& [m, row] : table) {
    int expected = 0;
    for (int j : report.indices) expected += std::max(j - m + 1, 0);
    if (expected != row.dimension) {
      std::ostringstream msg;
      msg << "partial_indices: indices do not re-expand to the scan table at shift " << m << " (" << expected
          << " vs " << row.dimension << ")";
      throw InvariantViolation(msg.str());
    }
  }
  if (report.h0 != N(0)) {
    std::ostringstream msg;
    msg << "partial_indices: h0 = " << report.h0 << " but the untwisted kernel has dimension " << N(0);
    throw InvariantViolation(msg.str());
  }
  report.truncation = options.truncation;
  report.tau = options.tau;
  for (const auto& [m, row] : table) report.scan.push_back(row);
  return report;
}

}  // namespace holodisk
