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

#include "holodisk/doubling.hpp"

#include <algorithm>
#include <sstream>

#include "holodisk/errors.hpp"

namespace holodisk {

DoubleReport double_disk_bundle(const PartialIndexReport& report) {
  if (report.indices.empty()) throw InvalidInput("double_disk_bundle: empty index report");
  DoubleReport d;
  d.genus = 0;
  d.splitting = report.indices;
  std::sort(d.splitting.begin(), d.splitting.end());
  for (int j : d.splitting) d.degree += j;
  d.h0 = h0_of(d.splitting);
  d.h1 = h1_of(d.splitting);
  d.h0_rho = d.h0;
  d.h1_rho = d.h1;
  std::vector<long long> degrees(d.splitting.begin(), d.splitting.end());
  if (riemann_roch(0, degrees) != d.h0 - d.h1) throw InvariantViolation("double_disk_bundle: Riemann-Roch mismatch");
  return d;
}

long long riemann_roch(long long genus, long long degree) {
  if (genus < 0) throw InvalidInput("riemann_roch: genus must be nonnegative");
  return degree - genus + 1;
}

long long riemann_roch(long long genus, const std::vector<long long>& degrees) {
  long long s = 0;
  for (long long d : degrees) s += riemann_roch(genus, d);
  return s;
}

PlaneCurveReport plane_curve_double(const PlaneCurveSpec& spec) {
  const long long d = spec.degree;
  if (d < 1) {
    std::ostringstream msg;
    msg << "plane_curve_double: degree must be >= 1 (got " << d << ")";
    throw InvalidInput(msg.str());
  }
  PlaneCurveReport r;
  r.degree = spec.degree;
  r.components = spec.components;
  r.genus_x = static_cast<int>((d - 1) * (d - 2) / 2);
  r.h1 = 0;
  if (spec.components == CurveComponents::two) {
    r.double_kind = DoubleKind::self;
    r.genus_double = r.genus_x;
    r.deg_n = d * d;
    r.deg_k_minus_n = d * (d - 3) - r.deg_n;
    r.h0 = riemann_roch(r.genus_double, r.deg_n);
    r.moduli_dim = d * (d + 3) / 2;
  } else {
    // Unramified double cover: Euler characteristic doubles.
    r.double_kind = DoubleKind::orientation_double_cover;
    r.genus_double = 2 * r.genus_x - 1;
    r.realizable = r.genus_x > 0;
    r.deg_n = 2 * d * d;
    r.deg_k_minus_n = 2 * d * (d - 3) - r.deg_n;
    r.h0 = r.deg_n - r.genus_double + 1;
    r.moduli_dim = d * (d + 3);
  }
  if (r.deg_k_minus_n >= 0) throw InvariantViolation("plane_curve_double: K - N has nonnegative degree");
  if (r.h0 != r.moduli_dim) throw InvariantViolation("plane_curve_double: Riemann-Roch disagrees with the closed form");
  return r;
}

std::string to_string(CurveComponents c) { return c == CurveComponents::one ? "one" : "two"; }

std::string to_string(DoubleKind k) {
  return k == DoubleKind::self ? "self" : "orientation-double-cover";
}

}  // namespace holodisk
