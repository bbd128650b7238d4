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

// Linear programs and a bounded-variable primal simplex solver.
//
// Every row i is turned into an equality a_i x - r_i = 0 with a logical
// variable r_i whose bounds encode the row sense, so the starting basis is
// the (always nonsingular) logical basis. Basic factorizations use a sparse
// LU with product-form updates between refactorizations. Phase 1 minimizes
// the sum of infeasibilities, phase 2 the objective; Dantzig pricing falls
// back to Bland's rule after a run of degenerate pivots.

#ifndef NCOSPAN_LP_HPP_
#define NCOSPAN_LP_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncospan/relaxation.hpp"

namespace ncospan {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Solver tolerances, shared by the LP and branch-and-bound layers.
inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kOptimalityTolerance = 1e-9;

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
};

struct LpRow {
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

class LinearProgram {
 public:
  int AddVariable(std::string name, double lower, double upper,
                  double cost = 0.0);
  int AddRow(std::vector<std::pair<int, double>> terms, Sense sense,
             double rhs, std::string name = {});

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  LpVariable& variable(int j) { return variables_[j]; }
  const LpVariable& variable(int j) const { return variables_[j]; }
  LpRow& row(int i) { return rows_[i]; }
  double objective_offset() const { return objective_offset_; }
  void set_objective_offset(double offset) { objective_offset_ = offset; }

  double Objective(const std::vector<double>& x) const;
  double RowActivity(int i, const std::vector<double>& x) const;
  // Largest bound or row violation of \p x (absolute, row-wise scaled by
  // max(1, |rhs|)).
  double MaxViolation(const std::vector<double>& x) const;

 private:
  std::vector<LpVariable> variables_;
  std::vector<LpRow> rows_;
  double objective_offset_ = 0.0;
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kTimeLimit,
  kNumericalFailure,
};
const char* ToString(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  double objective = kInfinity;
  std::vector<double> x;             // structural values
  std::vector<double> row_activity;  // a_i x
  std::vector<double> duals;         // one per row
  std::vector<double> reduced_costs; // one per structural
  std::int64_t iterations = 0;
};

enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Snapshot for warm starts: one status per structural then per row.
struct Basis {
  std::vector<BasisStatus> status;
  bool empty() const { return status.empty(); }
};

struct SimplexOptions {
  std::int64_t iteration_limit = 0;  // 0: automatic
  std::optional<std::chrono::steady_clock::time_point> deadline;
  int refactor_interval = 32;
  int degenerate_run_for_bland = 50;
  bool scale = true;
  // Run dual simplex first when the starting basis is dual feasible.
  bool dual = true;
};

// Reusable solver: bounds may be changed and rows appended between solves,
// and the final basis of one solve warm-starts the next.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  LpResult Solve();

  void SetVariableBounds(int j, double lower, double upper);
  std::pair<double, double> VariableBounds(int j) const;
  int AddRow(const std::vector<std::pair<int, double>>& terms, Sense sense,
             double rhs);
  int num_rows() const;
  int num_variables() const;

  Basis GetBasis() const;
  // Installs \p basis; falls back to the logical basis when it does not
  // match the problem size or is singular.
  void SetBasis(const Basis& basis);
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
LpResult SolveLp(const LinearProgram& lp, SimplexOptions options = {});

}  // namespace ncospan

#endif  // NCOSPAN_LP_HPP_
