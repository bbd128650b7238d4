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

#ifndef NCOSPAN_BRANCH_AND_BOUND_HPP_
#define NCOSPAN_BRANCH_AND_BOUND_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ncospan/lp.hpp"

namespace ncospan {

struct BnBLimits {
  double gap = 1e-6;              // relative
  std::int64_t max_nodes = 0;     // 0: unlimited
  double time_limit_s = 0.0;      // 0: unlimited
};

enum class BnBStatus { kOptimal, kGapLimit, kNodeLimit, kTimeLimit, kInfeasible };
const char* ToString(BnBStatus status);

struct BnBResult {
  BnBStatus status = BnBStatus::kInfeasible;
  double incumbent = kInfinity;
  double lower_bound = -kInfinity;
  double gap = kInfinity;
  std::vector<double> x;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  std::int64_t cuts = 0;
  std::int64_t heuristic_incumbents = 0;
  // True when a node LP broke down and its parent bound was kept instead.
  bool bound_from_failed_nodes = false;

  bool has_incumbent() const { return !x.empty(); }
};

// Returns rows violated by \p x that are valid for every integer-feasible
// point. Rows are added globally.
using Separator = std::function<std::vector<LpRow>(const std::vector<double>& x)>;

// Proposes complete 0/1 assignments (one entry per binary, in order) from a
// fractional LP point. Each is solved with every binary fixed.
using Rounder = std::function<std::vector<std::vector<char>>(const std::vector<double>& x)>;

struct BnBOptions {
  BnBLimits limits;
  Separator separate;
  int max_cut_rounds = 200;
  Rounder round;
  int round_interval = 1;  // nodes between rounding attempts
  // A known feasible point and its objective, used as the first incumbent.
  std::optional<std::pair<double, std::vector<double>>> initial_incumbent;
};

// Best-bound branch-and-bound over the binaries of \p lp, branching on the
// most fractional one (lowest index on ties).
BnBResult BranchAndBound(const LinearProgram& lp,
                         const std::vector<int>& binaries,
                         const BnBOptions& options = {});

double RelativeGap(double incumbent, double bound);

}  // namespace ncospan

#endif  // NCOSPAN_BRANCH_AND_BOUND_HPP_
