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

#ifndef NCOSPAN_GREEDY_HPP_
#define NCOSPAN_GREEDY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ncospan/milp.hpp"
#include "ncospan/scenario.hpp"
#include "ncospan/span.hpp"

namespace ncospan {

struct RoutingState {
  std::vector<std::vector<int>> paths;     // [session] node positions
  std::vector<std::vector<char>> on_path;  // [link][session]
  std::vector<int> active;                 // links carrying any session
  std::vector<double> demand_bps;          // [link]
};

// Dijkstra per session on weights 1/(channel-averaged gain). Throws
// InfeasibleError naming a disconnected session.
RoutingState InitialRoutes(const Scenario& scenario);

struct GreedyCounters {
  std::int64_t passes = 0;
  std::int64_t candidate_evaluations = 0;
  std::int64_t interference_scans = 0;  // co-channel links inspected
  std::int64_t commits = 0;
};

struct GreedyResult {
  Schedule schedule;
  Allocation provisional;  // equal-split flows and matching powers
  double tracked_power = 0.0;
  // Running objective after every commit, served links only.
  std::vector<double> trace;
  std::vector<int> unserved_after_commit;
  GreedyCounters counters;
  std::vector<std::string> unserved;  // links left without a channel
};

// True when putting \p power on (\p link, \p channel) would interfere with
// or be interfered by the current schedule, or share a node with a
// co-channel link.
bool InterferenceBlocked(const Scenario& scenario, int link, int channel,
                         double power, const Schedule& schedule,
                         const std::vector<std::vector<double>>& powers,
                         std::int64_t* scans = nullptr);

GreedyResult GreedySchedule(const Scenario& scenario,
                            const RoutingState& routing, std::uint64_t seed);

// Optimal flows and powers for the greedy schedule. Falls back to the
// provisional allocation when that is better or the LP fails.
Solution FinalOptimize(const Scenario& scenario, const GreedyResult& greedy,
                       const MilpOptions& options = {});

Solution SolveGreedy(const Scenario& scenario, std::uint64_t seed,
                     const MilpOptions& options = {});

// Transmit-power-only optimum, reported under the true radio profile.
Solution TxPowerMin(const Scenario& scenario, const SolveOptions& options = {});

// Single link, single session: best-gain channel only.
Solution BestChannelMin(const Scenario& scenario);

}  // namespace ncospan

#endif  // NCOSPAN_GREEDY_HPP_
