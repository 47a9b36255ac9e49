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


#include <benchmark/benchmark.h>

#include "holodisk/boundary.hpp"
#include "holodisk/dbar.hpp"
#include "holodisk/moduli.hpp"

using namespace holodisk;

namespace {

void BM_PartialIndicesDiagonal(benchmark::State& state) {
  const std::vector<int> js{-2, 1, 3};
  const GLoop g(FourierLoop::diagonal_monomials(js));
  IndexOptions o;
  o.truncation = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(partial_indices(g, o));
}
BENCHMARK(BM_PartialIndicesDiagonal)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KernelBasis(benchmark::State& state) {
  const std::vector<int> js{1, 1};
  const GLoop g(FourierLoop::diagonal_monomials(js));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(g));
}
BENCHMARK(BM_KernelBasis)->Unit(benchmark::kMillisecond);

void BM_CauchyPompeiu(benchmark::State& state) {
  const int radial = static_cast<int>(state.range(0));
  const auto grid = DiskGrid::make(radial, 4 * radial);
  const RHSForm phi = RHSForm::sample(grid, 2, [](Complex z) {
    CVector v(2);
    v << std::conj(z) * z + 1.0, std::exp(std::conj(z));
    return v;
  });
  PompeiuOptions o;
  o.tolerance = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_pompeiu(phi, o));
}
BENCHMARK(BM_CauchyPompeiu)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_NewtonDisk(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  RVector u = RVector::Zero(m + 2), v = RVector::Zero(m + 2);
  u(0) = 1.0;
  v(1) = 1.0;
  const auto p = PerturbationSpec::cubic_harmonic(m, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(continue_disk(u, v, p));
}
BENCHMARK(BM_NewtonDisk)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
