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

#include "ncospan/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

namespace ncospan {

namespace {

constexpr double kOptimalGap = 1e-6;

struct Node {
  double bound = -kInfinity;
  int depth = 0;
  std::int64_t id = 0;
  std::vector<std::pair<int, char>> fixings;
  std::shared_ptr<const Basis> basis;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

}  // namespace

const char* ToString(BnBStatus status) {
  switch (status) {
    case BnBStatus::kOptimal: return "optimal";
    case BnBStatus::kGapLimit: return "gap-limit";
    case BnBStatus::kNodeLimit: return "node-limit";
    case BnBStatus::kTimeLimit: return "time-limit";
    case BnBStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

double RelativeGap(double incumbent, double bound) {
  if (!std::isfinite(incumbent) || !std::isfinite(bound)) return kInfinity;
  return std::max(0.0, (incumbent - bound) / std::max(std::abs(incumbent), 1e-12));
}

BnBResult BranchAndBound(const LinearProgram& lp,
                         const std::vector<int>& binaries,
                         const BnBOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (options.limits.time_limit_s > 0.0) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(options.limits.time_limit_s));
  }

  SimplexOptions simplex_options;
  simplex_options.deadline = deadline;
  SimplexSolver solver(lp, simplex_options);

  std::vector<std::pair<double, double>> root_bounds;
  root_bounds.reserve(binaries.size());
  for (int j : binaries) root_bounds.emplace_back(lp.variable(j).lower, lp.variable(j).upper);

  BnBResult result;
  double incumbent = kInfinity;
  if (options.initial_incumbent) {
    incumbent = options.initial_incumbent->first;
    result.x = options.initial_incumbent->second;
  }
  double lost_bound = kInfinity;    // nodes dropped after LP breakdown
  double pruned_bound = kInfinity;  // nodes dropped by the gap rule
  double reported = -kInfinity;

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  std::int64_t next_id = 0;
  open.push(Node{-kInfinity, 0, next_id++, {}, nullptr});

  auto global_bound = [&]() {
    double b = std::min(lost_bound, pruned_bound);
    if (!open.empty()) b = std::min(b, open.top().bound);
    else b = std::min(b, incumbent);
    reported = std::max(reported, b);
    return std::min(reported, incumbent);
  };

  enum class Outcome { kOptimal, kInfeasible, kFailed, kTimeLimit };
  // Solves the current LP, adding separated rows until none are violated or
  // the bound stops moving. A failure after the first round keeps the last
  // optimal point, which is still a relaxation.
  auto solve_with_cuts = [&](LpResult& out) {
    double last_objective = -kInfinity;
    int stalled = 0;
    for (int round = 0;; ++round) {
      LpResult r = solver.Solve();
      result.lp_iterations += r.iterations;
      if (r.status == LpStatus::kTimeLimit) return Outcome::kTimeLimit;
      if (r.status == LpStatus::kInfeasible) return Outcome::kInfeasible;
      if (r.status != LpStatus::kOptimal) {
        return round == 0 ? Outcome::kFailed : Outcome::kOptimal;
      }
      out = std::move(r);
      if (!options.separate || round >= options.max_cut_rounds) break;
      // Cuts that no longer move the bound are below the LP tolerance.
      const double rise = out.objective - last_objective;
      stalled = rise <= 1e-9 * std::max(1.0, std::abs(out.objective)) ? stalled + 1 : 0;
      last_objective = out.objective;
      if (stalled >= 3) break;
      const std::vector<LpRow> cuts = options.separate(out.x);
      if (cuts.empty()) break;
      for (const LpRow& cut : cuts) solver.AddRow(cut.terms, cut.sense, cut.rhs);
      result.cuts += static_cast<std::int64_t>(cuts.size());
    }
    return Outcome::kOptimal;
  };

  auto take_incumbent = [&](const LpResult& r) {
    incumbent = r.objective;
    result.x = r.x;
    for (int j : binaries) result.x[j] = std::round(result.x[j]);
  };

  std::optional<BnBStatus> stopped;
  while (!open.empty()) {
    const double bound = global_bound();
    if (std::isfinite(incumbent) &&
        RelativeGap(incumbent, bound) <= options.limits.gap) {
      stopped = BnBStatus::kGapLimit;
      break;
    }
    if (deadline && Clock::now() > *deadline) {
      stopped = BnBStatus::kTimeLimit;
      break;
    }
    if (options.limits.max_nodes > 0 && result.nodes >= options.limits.max_nodes) {
      stopped = BnBStatus::kNodeLimit;
      break;
    }

    Node node = open.top();
    open.pop();
    if (std::isfinite(incumbent)) {
      if (node.bound >= incumbent) continue;
      if (RelativeGap(incumbent, node.bound) <= options.limits.gap) {
        pruned_bound = std::min(pruned_bound, node.bound);
        continue;
      }
    }
    ++result.nodes;

    for (std::size_t b = 0; b < binaries.size(); ++b) {
      solver.SetVariableBounds(binaries[b], root_bounds[b].first, root_bounds[b].second);
    }
    for (const auto& [j, v] : node.fixings) solver.SetVariableBounds(j, v, v);
    if (node.basis) solver.SetBasis(*node.basis);

    LpResult lp_result;
    const Outcome outcome = solve_with_cuts(lp_result);
    if (outcome == Outcome::kTimeLimit) {
      open.push(node);
      stopped = BnBStatus::kTimeLimit;
      break;
    }
    if (outcome == Outcome::kFailed) {
      lost_bound = std::min(lost_bound, node.bound);
      result.bound_from_failed_nodes = true;
    }
    if (outcome != Outcome::kOptimal) continue;

    const double node_bound = std::max(lp_result.objective, node.bound);
    if (node_bound >= incumbent) continue;

    int branch = -1;
    double best_frac = kIntegralityTolerance;
    for (int j : binaries) {
      const double v = lp_result.x[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      take_incumbent(lp_result);
      continue;
    }

    auto basis = std::make_shared<const Basis>(solver.GetBasis());
    if (options.round && (result.nodes - 1) % std::max(1, options.round_interval) == 0) {
      for (const std::vector<char>& proposal : options.round(lp_result.x)) {
        for (std::size_t b = 0; b < binaries.size(); ++b) {
          const double v = proposal[b] ? 1.0 : 0.0;
          if (v < root_bounds[b].first || v > root_bounds[b].second) continue;
          solver.SetVariableBounds(binaries[b], v, v);
        }
        LpResult trial;
        const Outcome o = solve_with_cuts(trial);
        if (o == Outcome::kTimeLimit) break;
        if (o == Outcome::kOptimal && trial.objective < incumbent) {
          take_incumbent(trial);
          ++result.heuristic_incumbents;
        }
      }
      if (node_bound >= incumbent) continue;
    }
    const bool up_first = lp_result.x[branch] >= 0.5;
    for (int k = 0; k < 2; ++k) {
      const char value = (k == 0) == up_first ? 1 : 0;
      Node child{node_bound, node.depth + 1, next_id++, node.fixings, basis};
      child.fixings.emplace_back(branch, value);
      open.push(std::move(child));
    }
  }

  const double bound = global_bound();
  result.incumbent = incumbent;
  result.lower_bound = std::isfinite(incumbent) ? std::min(bound, incumbent) : bound;
  result.gap = RelativeGap(incumbent, result.lower_bound);
  if (!result.has_incumbent()) {
    result.status = stopped && *stopped != BnBStatus::kGapLimit
                        ? *stopped
                        : BnBStatus::kInfeasible;
    result.gap = kInfinity;
  } else if (stopped && *stopped != BnBStatus::kGapLimit) {
    result.status = *stopped;
  } else {
    result.status = result.gap <= kOptimalGap ? BnBStatus::kOptimal
                                              : BnBStatus::kGapLimit;
  }
  return result;
}

}  // namespace ncospan
