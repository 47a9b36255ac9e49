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


#include <numeric>

#include "doctest.h"
#include "holodisk/boundary.hpp"
#include "holodisk/errors.hpp"
#include "support.hpp"

using namespace holodisk;
namespace ht = holodisk::testing;

namespace {

void check_report_identities(const PartialIndexReport& r, int n) {
  CHECK(static_cast<int>(r.indices.size()) == n);
  CHECK(r.maslov == std::accumulate(r.indices.begin(), r.indices.end(), 0));
  CHECK(r.h0 - r.h1 == r.maslov + n);
  CHECK(std::is_sorted(r.indices.begin(), r.indices.end()));
}

}  // namespace

TEST_CASE("frame_to_gloop examples") {
  const GLoop id = frame_to_gloop(BoundaryFrame::from_loop(FourierLoop::constant(CMatrix::Identity(2, 2))));
  CHECK(id.loop().order() == 0);
  CHECK((id.loop().coeff(0) - CMatrix::Identity(2, 2)).norm() < 1e-14);
  const GLoop e2 = frame_to_gloop(BoundaryFrame::from_loop(FourierLoop::scalar({{1, 1.0}})));
  CHECK(std::abs(e2.loop().coeff_or_zero(2)(0, 0) - 1.0) < 1e-12);
  CHECK(e2.loop().max_coeff_norm() < 1.0 + 1e-12);
  CHECK(maslov_index(e2) == 2);
}

TEST_CASE("frame_to_gloop on random polynomial frames") {
  ht::Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    FourierLoop b(2, 2, 2);
    b.coeff(0) = CMatrix::Identity(2, 2) * 3.0;
    for (int k = -2; k <= 2; ++k)
      if (k != 0) b.coeff(k) = 0.3 * ht::random_cmatrix(rng, 2, 2);
    const GLoop g = frame_to_gloop(BoundaryFrame::from_loop(b));
    CHECK(g.reality_defect() <= 1e-10);
    for (double t : {0.2, 1.1, 3.3}) {
      const CMatrix gt = g.loop().evaluate(t), bt = b.evaluate(t);
      CHECK((gt - bt * bt.conjugate().inverse()).norm() < 1e-10);
    }
  }
}

TEST_CASE("frames: invertibility and single-valuedness") {
  CHECK_THROWS_AS(BoundaryFrame::from_loop(FourierLoop::scalar({{0, 1.0}, {1, 1.0}})), InvalidInput);
  // e^{i theta / 2} is not single-valued on the circle
  CHECK_THROWS_AS(BoundaryFrame::from_function([](double t) { return CMatrix::Constant(1, 1, std::polar(1.0, t / 2)); }),
                  InvalidInput);
  CHECK_NOTHROW(BoundaryFrame::from_function([](double t) { return CMatrix::Constant(1, 1, std::polar(1.0, t)); }));
}

TEST_CASE("GLoop validates the reality condition") {
  CHECK_THROWS_AS(GLoop(FourierLoop::scalar({{0, 2.0}})), InvalidInput);
  CHECK_NOTHROW(GLoop(FourierLoop::scalar({{1, 1.0}})));
}

TEST_CASE("maslov_index examples") {
  CHECK(maslov_index(GLoop(FourierLoop::scalar({{1, 1.0}}))) == 1);
  CHECK(maslov_index(GLoop(FourierLoop::constant(CMatrix::Identity(3, 3)))) == 0);
  CHECK(maslov_index(ht::diagonal_gloop({1, 1})) == 2);
}

TEST_CASE("maslov_index is constant along a homotopy") {
  ht::Rng rng(22);
  const FourierLoop theta = ht::random_disk_unit(rng, 2, 2, 1.0);
  const GLoop base = ht::diagonal_gloop({2, -1});
  for (int s = 0; s <= 5; ++s) {
    const double t = 0.15 * s;
    FourierLoop th = theta;
    for (int k = 1; k <= th.order(); ++k) th.coeff(k) *= t / 1.0;
    CHECK(maslov_index(ht::conjugate_by(base, th)) == 1);
  }
}

TEST_CASE("partial_indices examples") {
  const auto r3 = partial_indices(GLoop(FourierLoop::scalar({{3, 1.0}})));
  CHECK(r3.indices == std::vector<int>{3});
  CHECK(r3.h0 == 4);
  CHECK(r3.h1 == 0);
  CHECK(r3.regular);
  const auto ri = partial_indices(GLoop(FourierLoop::constant(CMatrix::Identity(2, 2))));
  CHECK(ri.indices == std::vector<int>{0, 0});
  CHECK(ri.h0 == 2);
  CHECK(ri.h1 == 0);
  const auto r11 = partial_indices(ht::diagonal_gloop({1, 1}));
  CHECK(r11.indices == std::vector<int>{1, 1});
  CHECK(r11.h0 == 4);
  CHECK(r11.regular);
  const auto rm2 = partial_indices(GLoop(FourierLoop::scalar({{-2, 1.0}})));
  CHECK(rm2.indices == std::vector<int>{-2});
  CHECK(rm2.h0 == 0);
  CHECK(rm2.h1 == 1);
  CHECK_FALSE(rm2.regular);
  for (const auto* r : {&r3, &ri, &r11, &rm2}) check_report_identities(*r, static_cast<int>(r->indices.size()));
}

TEST_CASE("scan table re-expands from the indices") {
  const auto r = partial_indices(ht::diagonal_gloop({-2, 0, 3}));
  CHECK(r.indices == std::vector<int>{-2, 0, 3});
  for (const auto& row : r.scan) {
    int expected = 0;
    for (int j : r.indices) expected += std::max(j - row.shift + 1, 0);
    CHECK(row.dimension == expected);
  }
  int sum = 0;
  for (std::size_t i = 1; i + 1 < r.scan.size(); ++i) {
    sum += r.scan[i - 1].dimension - 2 * r.scan[i].dimension + r.scan[i + 1].dimension;
  }
  CHECK(sum == 3);
}

TEST_CASE("partial_indices invariant under holomorphic change of frame") {
  ht::Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const auto c = ht::random_condition(rng, n, -3, 3);
    const auto r = partial_indices(c.g);
    auto sorted = c.indices;
    std::sort(sorted.begin(), sorted.end());
    CHECK(r.indices == sorted);
    check_report_identities(r, n);
  }
}

TEST_CASE("partial_indices reports a too-small truncation") {
  IndexOptions o;
  o.truncation = 2;
  CHECK_THROWS_AS(partial_indices(GLoop(FourierLoop::scalar({{6, 1.0}})), o), NumericalFailure);
}

TEST_CASE("decide_rank flags ambiguous gaps") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-3;
  const auto ok = decide_rank(a, 1e-8);
  CHECK(ok.rank == 2);
  CHECK(ok.nullity == 1);
  a(2, 2) = 1e-8;
  CHECK_THROWS_AS(decide_rank(a, 1e-8), NumericalFailure);
}

TEST_CASE("twisted problem recovers kernel elements") {
  const GLoop g(FourierLoop::scalar({{2, 1.0}}));
  const TwistedProblem tp = TwistedProblem::homogeneous(g, 0, 16);
  const TaylorDisk f = TaylorDisk::scalar({Complex(0.3, 0.4), 1.5, Complex(0.3, -0.4)});
  CHECK((tp.matrix() * tp.pack(f)).norm() < 1e-14);
}

TEST_CASE("birkhoff_scalar examples") {
  const auto b5 = birkhoff_scalar(GLoop(FourierLoop::scalar({{5, 1.0}})));
  CHECK(b5.index == 5);
  CHECK(std::abs(b5.theta_plus.coeff_or_zero(0)(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(b5.theta_minus.coeff_or_zero(0)(0, 0) - 1.0) < 1e-12);
  const auto b0 = birkhoff_scalar(GLoop(FourierLoop::scalar({{0, 1.0}})));
  CHECK(b0.index == 0);
  CHECK(b0.reconstruction_residual < 1e-12);
  // (2 + e^{it}) / (2 + e^{-it})
  std::vector<Complex> s;
  for (int j = 0; j < 256; ++j) {
    const double t = kTwoPi * j / 256;
    s.push_back((2.0 + std::polar(1.0, t)) / (2.0 + std::polar(1.0, -t)));
  }
  const GLoop g(loop_from_samples(std::span<const Complex>(s)).trimmed(1e-15));
  const auto b = birkhoff_scalar(g);
  CHECK(b.index == 0);
  CHECK(b.reconstruction_residual <= 1e-10);
  CHECK(b.plus_leak <= 1e-10);
  CHECK(b.minus_leak <= 1e-10);
  CHECK_THROWS_AS(birkhoff_scalar(ht::diagonal_gloop({1, 1})), InvalidInput);
}

TEST_CASE("is_fredholm_regular examples") {
  CHECK(is_fredholm_regular(report_from_indices({1, 1})));
  CHECK(is_fredholm_regular(report_from_indices({-1})));
  CHECK_FALSE(is_fredholm_regular(report_from_indices({-2, 3})));
  CHECK(h0_of({-1}) == 0);
  CHECK(h1_of({-1}) == 0);
  CHECK(h1_of({-3, 0}) == 2);
}
