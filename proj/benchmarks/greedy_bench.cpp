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

#include "ncospan/greedy.hpp"
#include "ncospan/scenario.hpp"

namespace {

using namespace ncospan;

void BM_GreedySchedule(benchmark::State& state) {
  const Scenario sc = LoadScenario(NCOSPAN_DATA_DIR "/network12.json");
  const RoutingState routes = InitialRoutes(sc);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GreedySchedule(sc, routes, seed++).tracked_power);
  }
}
BENCHMARK(BM_GreedySchedule)->Unit(benchmark::kMicrosecond);

void BM_SolveGreedy(benchmark::State& state) {
  const Scenario sc = LoadScenario(NCOSPAN_DATA_DIR "/" + std::string("single-link.json"));
  for (auto _ : state) benchmark::DoNotOptimize(SolveGreedy(sc, 1).breakdown.total);
}
BENCHMARK(BM_SolveGreedy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
