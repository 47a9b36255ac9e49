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


#include "doctest.h"
#include "holodisk/dbar.hpp"
#include "holodisk/doubling.hpp"
#include "holodisk/errors.hpp"
#include "support.hpp"

using namespace holodisk;
namespace ht = holodisk::testing;

TEST_CASE("double_disk_bundle examples") {
  const auto a = double_disk_bundle(report_from_indices({1, 1}));
  CHECK(a.degree == 2);
  CHECK(a.h0 == 4);
  CHECK(a.h1 == 0);
  CHECK(a.genus == 0);
  const auto b = double_disk_bundle(report_from_indices({-1}));
  CHECK(b.degree == -1);
  CHECK(b.h0 == 0);
  CHECK(b.h1 == 0);
  const auto c = double_disk_bundle(report_from_indices({0, 0, 0}));
  CHECK(c.degree == 0);
  CHECK(c.h0 == 3);
  CHECK(c.h1 == 0);
}

TEST_CASE("double bundle invariants") {
  for (const auto& js : std::vector<std::vector<int>>{{-3, 2}, {4}, {-1, -1, 5}, {0, 1, 2}}) {
    const auto d = double_disk_bundle(report_from_indices(js));
    int deg = 0;
    for (int j : js) deg += j;
    CHECK(d.degree == deg);
    CHECK(d.h0 == h0_of(js));
    CHECK(d.h1 == h1_of(js));
    CHECK(d.h0_rho == d.h0);
    CHECK(d.h1_rho == d.h1);
    CHECK(d.h0 - d.h1 == riemann_roch(0, deg) + static_cast<long long>(js.size()) - 1);
  }
}

TEST_CASE("double bundle h0 equals the numerical kernel dimension") {
  ht::Rng rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const auto c = ht::random_condition(rng, 1 + trial % 3, -3, 3);
    CHECK(double_disk_bundle(partial_indices(c.g)).h0 == kernel_basis(c.g).dimension());
  }
}

TEST_CASE("plane_curve_double examples") {
  CHECK(plane_curve_double({3, CurveComponents::two}).moduli_dim == 9);
  CHECK(plane_curve_double({3, CurveComponents::one}).moduli_dim == 18);
  CHECK(plane_curve_double({1, CurveComponents::two}).moduli_dim == 2);
  CHECK_THROWS_AS(plane_curve_double({0, CurveComponents::two}), InvalidInput);
}

TEST_CASE("plane curve closed forms for d = 1..12") {
  for (int d = 1; d <= 12; ++d) {
    const auto two = plane_curve_double({d, CurveComponents::two});
    const auto one = plane_curve_double({d, CurveComponents::one});
    CHECK(two.moduli_dim == d * (d + 3) / 2);
    CHECK(one.moduli_dim == d * (d + 3));
    CHECK(two.h1 == 0);
    CHECK(one.h1 == 0);
    CHECK(two.deg_k_minus_n < 0);
    CHECK(one.deg_k_minus_n < 0);
    CHECK(two.h0 == riemann_roch(two.genus_x, two.deg_n));
    if (one.realizable) CHECK(one.h0 == riemann_roch(one.genus_double, one.deg_n));
    CHECK(two.genus_x == (d - 1) * (d - 2) / 2);
    CHECK(one.genus_double == 2 * one.genus_x - 1);
    CHECK(one.double_kind == DoubleKind::orientation_double_cover);
    CHECK(two.double_kind == DoubleKind::self);
    CHECK(one.realizable == (d >= 3));
  }
}

TEST_CASE("riemann_roch examples") {
  CHECK(riemann_roch(0, 1) == 2);
  CHECK(riemann_roch(1, 0) == 0);
  CHECK(riemann_roch(1, 9) == 9);
  CHECK(riemann_roch(0, std::vector<long long>{1, 1}) == 4);
}
