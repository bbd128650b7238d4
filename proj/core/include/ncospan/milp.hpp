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

#ifndef NCOSPAN_MILP_HPP_
#define NCOSPAN_MILP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ncospan/branch_and_bound.hpp"
#include "ncospan/lp.hpp"
#include "ncospan/power_model.hpp"
#include "ncospan/scenario.hpp"
#include "ncospan/span.hpp"

namespace ncospan {

struct MilpOptions {
  // Four fixed hull segments per link-channel instead of the default
  // on/off tangent planes refined by separation.
  bool fixed_hull = false;
  // How q >= span is encoded per node side.
  //   kInterval  continuous lowest/highest-channel weights, 3t+3 rows
  //   kEdges     pairwise rows over exact channel edges, t^2 rows
  //   kIndex     pairwise rows over remapped channel indices, t^2 rows
  enum class SpanEncoding { kInterval, kEdges, kIndex };
  SpanEncoding spans = SpanEncoding::kInterval;
  // Adds q >= sum of used widths per node side.
  bool strengthen = true;
  // Absolute capacity violation (nats) that triggers a new tangent.
  double separation_tolerance = 1e-6;
  // Objective weight per Mbps of flow; removes zero-cost circulations.
  double flow_cost = 1e-9;
};

// Model units: rates and capacities in Mbps, widths and spans in MHz,
// powers in W.
struct VariableMap {
  // [link][channel position]; -1 when the channel is not usable on the link.
  std::vector<std::vector<int>> x, p, s, c;
  // [link][channel position][session]; -1 when excluded.
  std::vector<std::vector<std::vector<int>>> f;
  // [node]; -1 when the node has no link on that side.
  std::vector<int> q_t, q_r, alpha1, beta1;
  int p_tot = -1;
  std::vector<int> binaries;
};

struct MilpModel {
  LinearProgram lp;
  VariableMap vars;
  std::vector<std::string> warnings;
  int interference_rows = 0;
  int dropped_interference_pairs = 0;
  // Violated capacity tangents at an LP point. Empty with the fixed hull.
  Separator separator;
  // Schedules rounded from an LP point: links that carry flow keep their
  // channels with x >= 0.5 (or the largest x), and a single-channel variant.
  Rounder rounder;
};

MilpModel BuildMilp(const Scenario& scenario, const MilpOptions& options = {});

// Row count predicted from scenario counts; see README for the formula.
int ExpectedRowCount(const Scenario& scenario, const MilpModel& model,
                     const MilpOptions& options = {});

struct Allocation {
  // [link][channel position], W.
  std::vector<std::vector<double>> power;
  // [link][channel position][session], bits/s.
  std::vector<std::vector<std::vector<double>>> flow;

  static Allocation Zero(const Scenario& scenario);
  double LinkChannelFlow(int link, int channel) const;
};

// Minimum power that carries \p flow_bps on one channel.
double RepairPower(double flow_bps, double width_hz, double gain,
                   double noise_density);

struct RepairResult {
  std::vector<std::vector<double>> power;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

RepairResult RepairPowers(const Scenario& scenario, const Schedule& schedule,
                          const Allocation& flows);

// System power of a schedule and allocation with frequency spans.
PowerBreakdown EvaluatePower(const Scenario& scenario, const Schedule& schedule,
                             const std::vector<std::vector<double>>& power);

enum class SolveStatus { kSolved, kInfeasible, kLimitWithIncumbent, kLimitNoIncumbent };
const char* ToString(SolveStatus status);

struct Solution {
  std::string method;
  SolveStatus status = SolveStatus::kInfeasible;
  Schedule schedule;
  Allocation allocation;
  SpanResult spans;
  PowerBreakdown breakdown;
  std::optional<BnBResult> bnb;
  std::vector<std::string> warnings;
  double runtime_s = 0.0;

  bool has_solution() const {
    return status == SolveStatus::kSolved ||
           status == SolveStatus::kLimitWithIncumbent;
  }
};

// Fills spans and breakdown from schedule and allocation.
void Finalize(const Scenario& scenario, Solution& solution);

struct SolveOptions {
  BnBLimits limits;
  MilpOptions milp;
  // Schedule used to seed the incumbent, typically from the greedy pass.
  std::optional<Schedule> warm_start;
};

Solution SolveBnb(const Scenario& scenario, const SolveOptions& options = {});

// Optimal flows and powers for a frozen schedule; nullopt if infeasible.
std::optional<Solution> SolveFixedSchedule(const Scenario& scenario,
                                           const Schedule& schedule,
                                           const MilpOptions& options = {});

// Decodes a model point into a repaired Solution.
Solution DecodeSolution(const Scenario& scenario, const VariableMap& vars,
                        const std::vector<double>& x);

}  // namespace ncospan

#endif  // NCOSPAN_MILP_HPP_
