// Copyright 2026 The ncospan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "ncospan/lp.hpp"
#include "ncospan/milp.hpp"
#include "ncospan/relaxation.hpp"
#include "ncospan/scenario.hpp"

namespace {

using namespace ncospan;

Scenario Network12() { return LoadScenario(NCOSPAN_DATA_DIR "/network12.json"); }

void BM_BuildMilp(benchmark::State& state) {
  const Scenario sc = Network12();
  for (auto _ : state) benchmark::DoNotOptimize(BuildMilp(sc).lp.num_rows());
}
BENCHMARK(BM_BuildMilp)->Unit(benchmark::kMillisecond);

void BM_RootRelaxation(benchmark::State& state) {
  const MilpModel model = BuildMilp(Network12());
  for (auto _ : state) {
    SimplexSolver solver(model.lp);
    benchmark::DoNotOptimize(solver.Solve().objective);
  }
}
BENCHMARK(BM_RootRelaxation)->Unit(benchmark::kMillisecond);

// Dense random LPs, min c.x with A x <= b and 0 <= x <= 1.
void BM_RandomLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.AddVariable("x" + std::to_string(j), 0.0, 1.0, u(rng));
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) terms.emplace_back(j, u(rng));
    lp.AddRow(std::move(terms), Sense::kLessEqual, 1.0 + std::abs(u(rng)));
  }
  for (auto _ : state) {
    SimplexSolver solver(lp);
    benchmark::DoNotOptimize(solver.Solve().objective);
  }
}
BENCHMARK(BM_RandomLp)->Arg(20)->Arg(80)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BuildHull(benchmark::State& state) {
  double lo = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildHull(lo, lo + 100.0).beta);
    lo = lo > 1e3 ? 0.0 : lo + 0.37;
  }
}
BENCHMARK(BM_BuildHull);

}  // namespace
