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
// Invariants of the doubled surface and bundle: disks (genus 0) and real
// plane curves.

#pragma once

#include <string>
#include <vector>

#include "holodisk/boundary.hpp"

namespace holodisk {

struct DoubleReport {
  int genus = 0;
  std::vector<int> splitting;
  int degree = 0;
  int h0 = 0;
  int h1 = 0;
  /// Real dimensions of the invariant parts; a real form of H^0, H^1.
  int h0_rho = 0;
  int h1_rho = 0;
};

DoubleReport double_disk_bundle(const PartialIndexReport& report);

enum class CurveComponents { one, two };

struct PlaneCurveSpec {
  int degree = 1;
  CurveComponents components = CurveComponents::two;
};

enum class DoubleKind { self, orientation_double_cover };

struct PlaneCurveReport {
  int degree = 0;
  CurveComponents components = CurveComponents::two;
  int genus_x = 0;
  DoubleKind double_kind = DoubleKind::self;
  int genus_double = 0;
  long long deg_n = 0;
  long long deg_k_minus_n = 0;
  long long h0 = 0;
  long long h1 = 0;
  long long moduli_dim = 0;
  /// False when no smooth real curve of this degree has connected
  /// complement (conics and lines always separate).
  bool realizable = true;
};

PlaneCurveReport plane_curve_double(const PlaneCurveSpec& spec);

/// h0 - h1 = degree - genus + 1 for a line bundle.
long long riemann_roch(long long genus, long long degree);
/// Split rank-r bundle: sum over the line summands.
long long riemann_roch(long long genus, const std::vector<long long>& degrees);

std::string to_string(CurveComponents c);
std::string to_string(DoubleKind k);

}  // namespace holodisk
