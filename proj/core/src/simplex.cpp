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

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ncospan/error.hpp"
#include "ncospan/lp.hpp"

namespace ncospan {

// ---------------------------------------------------------------------------
// LinearProgram
// ---------------------------------------------------------------------------

int LinearProgram::AddVariable(std::string name, double lower, double upper,
                               double cost) {
  if (lower > upper) {
    throw Error("variable " + name + " has lower bound above upper bound");
  }
  variables_.push_back({std::move(name), lower, upper, cost});
  return num_variables() - 1;
}

int LinearProgram::AddRow(std::vector<std::pair<int, double>> terms,
                          Sense sense, double rhs, std::string name) {
  for (const auto& [j, v] : terms) {
    if (j < 0 || j >= num_variables()) {
      throw Error("row " + name + " references an undeclared variable");
    }
    if (!std::isfinite(v)) {
      throw Error("row " + name + " has a non-finite coefficient");
    }
  }
  rows_.push_back({std::move(terms), sense, rhs, std::move(name)});
  return num_rows() - 1;
}

double LinearProgram::Objective(const std::vector<double>& x) const {
  double value = objective_offset_;
  for (int j = 0; j < num_variables(); ++j) value += variables_[j].cost * x[j];
  return value;
}

double LinearProgram::RowActivity(int i, const std::vector<double>& x) const {
  double activity = 0.0;
  for (const auto& [j, v] : rows_[i].terms) activity += v * x[j];
  return activity;
}

double LinearProgram::MaxViolation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    const auto& var = variables_[j];
    const double scale = std::max(1.0, std::abs(x[j]));
    worst = std::max(worst, (var.lower - x[j]) / scale);
    worst = std::max(worst, (x[j] - var.upper) / scale);
  }
  for (int i = 0; i < num_rows(); ++i) {
    const auto& row = rows_[i];
    const double activity = RowActivity(i, x);
    const double scale = std::max(1.0, std::abs(row.rhs));
    double v = 0.0;
    switch (row.sense) {
      case Sense::kLessEqual: v = activity - row.rhs; break;
      case Sense::kGreaterEqual: v = row.rhs - activity; break;
      case Sense::kEqual: v = std::abs(activity - row.rhs); break;
    }
    worst = std::max(worst, v / scale);
  }
  return worst;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
    case LpStatus::kTimeLimit: return "time-limit";
    case LpStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SimplexSolver
// ---------------------------------------------------------------------------

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kDualTolerance = 1e-9;

double PowerOfTwo(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  return std::exp2(std::round(std::log2(v)));
}

std::pair<double, double> LogicalBounds(Sense sense, double rhs) {
  switch (sense) {
    case Sense::kLessEqual: return {-kInfinity, rhs};
    case Sense::kGreaterEqual: return {rhs, kInfinity};
    case Sense::kEqual: return {rhs, rhs};
  }
  return {-kInfinity, kInfinity};
}

}  // namespace

class SimplexSolver::Impl {
 public:
  Impl(const LinearProgram& lp, SimplexOptions options);

  LpResult Solve();
  void SetVariableBounds(int j, double lower, double upper);
  std::pair<double, double> VariableBounds(int j) const {
    return {lower_[j] * col_scale_[j], upper_[j] * col_scale_[j]};
  }
  int AddRow(const std::vector<std::pair<int, double>>& terms, Sense sense,
             double rhs);
  Basis GetBasis() const { return Basis{status_}; }
  void SetBasis(const Basis& basis);
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) {
    options_.deadline = d;
  }
  int n() const { return n_; }
  int m() const { return m_; }

 private:
  using SparseMatrix = Eigen::SparseMatrix<double>;

  struct Eta {
    int position = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;  // excluding the pivot
  };

  void ComputeScaling(const LinearProgram& lp);
  void SetLogicalBasis();
  void PlaceNonbasic(int k);
  bool Refactor();
  void RecomputeBasics();
  enum class DualOutcome { kFeasible, kInfeasible, kSkipped, kLimit, kTimeLimit, kNumerical };
  DualOutcome DualPhase(std::int64_t limit, std::int64_t* iterations);
  // Basis swap plus eta update; false when a forced refactor fails.
  bool Exchange(int leaving, int entering, const Eigen::VectorXd& alpha);
  Eigen::VectorXd Ftran(Eigen::VectorXd column) const;
  Eigen::VectorXd Btran(Eigen::VectorXd costs) const;
  void LoadColumn(int k, Eigen::VectorXd& out) const;
  double ColumnDot(int k, const Eigen::VectorXd& y) const;
  double Cost(int k, bool phase_one) const {
    return (!phase_one && k < n_) ? cost_[k] : 0.0;
  }
  LpResult Finish(LpStatus status, std::int64_t iterations);

  SimplexOptions options_;
  int n_ = 0;
  int m_ = 0;
  double offset_ = 0.0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> col_scale_;
  std::vector<double> row_scale_;
  std::vector<double> x_;
  std::vector<BasisStatus> status_;
  std::vector<int> head_;
  std::vector<int> position_;
  // Only the structural part of the basis is factored: rows whose logical
  // is basic are eliminated directly.
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<int> kernel_cols_;    // basis positions of structural basics
  std::vector<int> kernel_vars_;    // their variables at factor time
  std::vector<int> kernel_rows_;    // rows without a basic logical
  std::vector<int> logical_pos_;    // [row] basis position of its logical, or -1
  std::vector<int> kernel_row_of_;  // [row] index into kernel_rows_, or -1
  std::vector<Eta> etas_;
  bool factor_valid_ = false;
  bool basics_stale_ = true;
  // Set once a basis came from an optimal solve; enables the dual phase.
  bool warm_ = false;
};

SimplexSolver::Impl::Impl(const LinearProgram& lp, SimplexOptions options)
    : options_(options),
      n_(lp.num_variables()),
      m_(lp.num_rows()),
      offset_(lp.objective_offset()) {
  ComputeScaling(lp);
  cols_.assign(n_, {});
  for (int i = 0; i < m_; ++i) {
    for (const auto& [j, v] : lp.rows()[i].terms) {
      if (v != 0.0) cols_[j].emplace_back(i, v * row_scale_[i] * col_scale_[j]);
    }
  }
  cost_.resize(n_);
  lower_.resize(n_ + m_);
  upper_.resize(n_ + m_);
  for (int j = 0; j < n_; ++j) {
    const auto& var = lp.variable(j);
    cost_[j] = var.cost * col_scale_[j];
    lower_[j] = var.lower / col_scale_[j];
    upper_[j] = var.upper / col_scale_[j];
  }
  for (int i = 0; i < m_; ++i) {
    const auto [lo, hi] = LogicalBounds(lp.rows()[i].sense, lp.rows()[i].rhs);
    lower_[n_ + i] = lo * row_scale_[i];
    upper_[n_ + i] = hi * row_scale_[i];
  }
  x_.assign(n_ + m_, 0.0);
  SetLogicalBasis();
}

void SimplexSolver::Impl::ComputeScaling(const LinearProgram& lp) {
  col_scale_.assign(n_, 1.0);
  row_scale_.assign(m_, 1.0);
  if (!options_.scale) return;
  // Geometric-mean equilibration, a few alternating passes.
  for (int pass = 0; pass < 6; ++pass) {
    for (int i = 0; i < m_; ++i) {
      double lo = kInfinity, hi = 0.0;
      for (const auto& [j, v] : lp.rows()[i].terms) {
        const double a = std::abs(v) * col_scale_[j];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      row_scale_[i] = hi > 0.0 ? PowerOfTwo(1.0 / std::sqrt(lo * hi)) : 1.0;
    }
    std::vector<double> lo(n_, kInfinity), hi(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, v] : lp.rows()[i].terms) {
        const double a = std::abs(v) * row_scale_[i];
        if (a == 0.0) continue;
        lo[j] = std::min(lo[j], a);
        hi[j] = std::max(hi[j], a);
      }
    }
    for (int j = 0; j < n_; ++j) {
      col_scale_[j] = hi[j] > 0.0 ? PowerOfTwo(1.0 / std::sqrt(lo[j] * hi[j]))
                                  : 1.0;
    }
  }
}

void SimplexSolver::Impl::PlaceNonbasic(int k) {
  if (std::isfinite(lower_[k])) {
    status_[k] = BasisStatus::kAtLower;
    x_[k] = lower_[k];
  } else if (std::isfinite(upper_[k])) {
    status_[k] = BasisStatus::kAtUpper;
    x_[k] = upper_[k];
  } else {
    status_[k] = BasisStatus::kFree;
    x_[k] = 0.0;
  }
}

void SimplexSolver::Impl::SetLogicalBasis() {
  status_.assign(n_ + m_, BasisStatus::kAtLower);
  position_.assign(n_ + m_, -1);
  head_.resize(m_);
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = BasisStatus::kBasic;
    head_[i] = n_ + i;
    position_[n_ + i] = i;
  }
  factor_valid_ = false;
  basics_stale_ = true;
  warm_ = false;
}

void SimplexSolver::Impl::SetBasis(const Basis& basis) {
  if (basis.status.size() > static_cast<std::size_t>(n_ + m_) ||
      basis.status.size() < static_cast<std::size_t>(n_)) {
    SetLogicalBasis();
    return;
  }
  std::vector<BasisStatus> status = basis.status;
  // Rows appended after the snapshot keep their logical basic.
  status.resize(n_ + m_, BasisStatus::kBasic);
  int basic = 0;
  for (auto s : status) basic += s == BasisStatus::kBasic ? 1 : 0;
  if (basic != m_) {
    SetLogicalBasis();
    return;
  }
  status_ = std::move(status);
  position_.assign(n_ + m_, -1);
  head_.clear();
  for (int k = 0; k < n_ + m_; ++k) {
    if (status_[k] == BasisStatus::kBasic) {
      position_[k] = static_cast<int>(head_.size());
      head_.push_back(k);
      continue;
    }
    if (status_[k] == BasisStatus::kAtUpper && std::isfinite(upper_[k])) {
      x_[k] = upper_[k];
    } else if (status_[k] == BasisStatus::kAtLower && std::isfinite(lower_[k])) {
      x_[k] = lower_[k];
    } else {
      PlaceNonbasic(k);
    }
  }
  factor_valid_ = false;
  basics_stale_ = true;
  warm_ = true;
}

void SimplexSolver::Impl::LoadColumn(int k, Eigen::VectorXd& out) const {
  out.setZero(m_);
  if (k < n_) {
    for (const auto& [i, v] : cols_[k]) out[i] = v;
  } else {
    out[k - n_] = -1.0;
  }
}

double SimplexSolver::Impl::ColumnDot(int k, const Eigen::VectorXd& y) const {
  if (k >= n_) return -y[k - n_];
  double s = 0.0;
  for (const auto& [i, v] : cols_[k]) s += v * y[i];
  return s;
}

bool SimplexSolver::Impl::Refactor() {
  kernel_cols_.clear();
  kernel_vars_.clear();
  kernel_rows_.clear();
  logical_pos_.assign(m_, -1);
  kernel_row_of_.assign(m_, -1);
  for (int p = 0; p < m_; ++p) {
    const int k = head_[p];
    if (k < n_) {
      kernel_cols_.push_back(p);
      kernel_vars_.push_back(k);
    } else {
      logical_pos_[k - n_] = p;
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] >= 0) continue;
    kernel_row_of_[i] = static_cast<int>(kernel_rows_.size());
    kernel_rows_.push_back(i);
  }
  etas_.clear();
  if (kernel_rows_.size() != kernel_cols_.size()) {
    factor_valid_ = false;
    return false;
  }
  const int dim = static_cast<int>(kernel_cols_.size());
  if (dim > 0) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (int c = 0; c < dim; ++c) {
      for (const auto& [i, v] : cols_[kernel_vars_[c]]) {
        if (kernel_row_of_[i] >= 0) triplets.emplace_back(kernel_row_of_[i], c, v);
      }
    }
    SparseMatrix kernel(dim, dim);
    kernel.setFromTriplets(triplets.begin(), triplets.end());
    kernel.makeCompressed();
    lu_.analyzePattern(kernel);
    lu_.factorize(kernel);
    if (lu_.info() != Eigen::Success) {
      factor_valid_ = false;
      return false;
    }
  }
  factor_valid_ = true;
  RecomputeBasics();
  // Reject numerically singular factors by checking the basic solve.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
  Eigen::VectorXd lhs = Eigen::VectorXd::Zero(m_);
  double scale = 1.0;
  for (int k = 0; k < n_ + m_; ++k) {
    if (x_[k] == 0.0) continue;
    if (k < n_) {
      for (const auto& [i, v] : cols_[k]) {
        (status_[k] == BasisStatus::kBasic ? lhs : rhs)[i] += v * x_[k];
      }
    } else {
      (status_[k] == BasisStatus::kBasic ? lhs : rhs)[k - n_] -= x_[k];
    }
    scale = std::max(scale, std::abs(x_[k]));
  }
  const double residual = (lhs + rhs).lpNorm<Eigen::Infinity>();
  if (!std::isfinite(residual) || residual > 1e-6 * scale) {
    factor_valid_ = false;
    return false;
  }
  return true;
}

void SimplexSolver::Impl::RecomputeBasics() {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
  for (int k = 0; k < n_ + m_; ++k) {
    if (status_[k] == BasisStatus::kBasic || x_[k] == 0.0) continue;
    if (k < n_) {
      for (const auto& [i, v] : cols_[k]) rhs[i] -= v * x_[k];
    } else {
      rhs[k - n_] += x_[k];
    }
  }
  const Eigen::VectorXd xb = Ftran(std::move(rhs));
  for (int p = 0; p < m_; ++p) x_[head_[p]] = xb[p];
  basics_stale_ = false;
}

Eigen::VectorXd SimplexSolver::Impl::Ftran(Eigen::VectorXd column) const {
  // B w = column. Kernel rows first, then each logical row gives its own
  // basic directly.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
  const int dim = static_cast<int>(kernel_cols_.size());
  if (dim > 0) {
    Eigen::VectorXd rhs(dim);
    for (int r = 0; r < dim; ++r) rhs[r] = column[kernel_rows_[r]];
    const Eigen::VectorXd ws = lu_.solve(rhs);
    for (int c = 0; c < dim; ++c) {
      const int p = kernel_cols_[c];
      w[p] = ws[c];
      if (ws[c] == 0.0) continue;
      for (const auto& [i, v] : cols_[kernel_vars_[c]]) {
        if (logical_pos_[i] >= 0) column[i] -= v * ws[c];
      }
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] >= 0) w[logical_pos_[i]] = -column[i];
  }
  for (const Eta& eta : etas_) {
    const double wr = w[eta.position] / eta.pivot;
    w[eta.position] = wr;
    if (wr == 0.0) continue;
    for (const auto& [i, a] : eta.entries) w[i] -= a * wr;
  }
  return w;
}

Eigen::VectorXd SimplexSolver::Impl::Btran(Eigen::VectorXd v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->position];
    for (const auto& [i, a] : it->entries) s -= v[i] * a;
    v[it->position] = s / it->pivot;
  }
  // y^T B = v^T. Logical rows are fixed by their own entry, the kernel rows
  // by a transposed solve.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] >= 0) y[i] = -v[logical_pos_[i]];
  }
  const int dim = static_cast<int>(kernel_cols_.size());
  if (dim > 0) {
    Eigen::VectorXd rhs(dim);
    for (int c = 0; c < dim; ++c) {
      const int p = kernel_cols_[c];
      double r = v[p];
      for (const auto& [i, a] : cols_[kernel_vars_[c]]) {
        if (logical_pos_[i] >= 0) r -= a * y[i];
      }
      rhs[c] = r;
    }
    const Eigen::VectorXd yk = lu_.transpose().solve(rhs);
    for (int r = 0; r < dim; ++r) y[kernel_rows_[r]] = yk[r];
  }
  return y;
}

void SimplexSolver::Impl::SetVariableBounds(int j, double lower, double upper) {
  if (lower > upper) throw Error("SetVariableBounds: lower > upper");
  lower_[j] = lower / col_scale_[j];
  upper_[j] = upper / col_scale_[j];
  if (status_[j] != BasisStatus::kBasic) {
    if (status_[j] == BasisStatus::kAtUpper && std::isfinite(upper_[j])) {
      x_[j] = upper_[j];
    } else {
      PlaceNonbasic(j);
    }
    basics_stale_ = true;
  }
}

int SimplexSolver::Impl::AddRow(const std::vector<std::pair<int, double>>& terms,
                                Sense sense, double rhs) {
  double lo = kInfinity, hi = 0.0;
  for (const auto& [j, v] : terms) {
    if (j < 0 || j >= n_) throw Error("AddRow references unknown variable");
    const double a = std::abs(v) * col_scale_[j];
    if (a == 0.0) continue;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double r = (options_.scale && hi > 0.0)
                       ? PowerOfTwo(1.0 / std::sqrt(lo * hi))
                       : 1.0;
  const int i = m_;
  row_scale_.push_back(r);
  double activity = 0.0;
  for (const auto& [j, v] : terms) {
    if (v == 0.0) continue;
    const double a = v * r * col_scale_[j];
    cols_[j].emplace_back(i, a);
    activity += a * x_[j];
  }
  const auto [lb, ub] = LogicalBounds(sense, rhs);
  lower_.push_back(lb * r);
  upper_.push_back(ub * r);
  x_.push_back(activity);
  status_.push_back(BasisStatus::kBasic);
  position_.push_back(i);
  head_.push_back(n_ + i);
  ++m_;
  factor_valid_ = false;
  basics_stale_ = true;
  return i;
}

LpResult SimplexSolver::Impl::Solve() {
  const std::int64_t limit = options_.iteration_limit > 0
                                 ? options_.iteration_limit
                                 : 50LL * (n_ + m_) + 10000;
  if (!factor_valid_ && !Refactor()) {
    SetLogicalBasis();
    if (!Refactor()) return Finish(LpStatus::kNumericalFailure, 0);
  }
  if (basics_stale_) RecomputeBasics();

  std::int64_t dual_iterations = 0;
  if (options_.dual && warm_) {
    const std::int64_t cap = std::min<std::int64_t>(limit, 2LL * m_ + 1000);
    switch (DualPhase(cap, &dual_iterations)) {
      case DualOutcome::kInfeasible:
        return Finish(LpStatus::kInfeasible, dual_iterations);
      case DualOutcome::kLimit:
        if (dual_iterations >= limit) {
          return Finish(LpStatus::kIterationLimit, dual_iterations);
        }
        break;
      case DualOutcome::kTimeLimit:
        return Finish(LpStatus::kTimeLimit, dual_iterations);
      case DualOutcome::kNumerical:
        // Primal simplex starts over from whatever basis survived.
        if (!factor_valid_ && !Refactor()) {
          SetLogicalBasis();
          if (!Refactor()) return Finish(LpStatus::kNumericalFailure, dual_iterations);
        }
        RecomputeBasics();
        break;
      case DualOutcome::kFeasible:
      case DualOutcome::kSkipped:
        break;
    }
  }

  const double tol = kFeasibilityTolerance;
  int degenerate_run = 0;
  bool bland = false;
  int refactor_failures = 0;
  Eigen::VectorXd column(m_);
  Eigen::VectorXd costs(m_);

  for (std::int64_t iter = dual_iterations;; ++iter) {
    if (iter >= limit) return Finish(LpStatus::kIterationLimit, iter);
    if (options_.deadline && (iter & 63) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      return Finish(LpStatus::kTimeLimit, iter);
    }

    // Phase selection from current basic infeasibilities.
    bool phase_one = false;
    for (int p = 0; p < m_; ++p) {
      const int k = head_[p];
      if (x_[k] < lower_[k] - tol) {
        costs[p] = -1.0;
        phase_one = true;
      } else if (x_[k] > upper_[k] + tol) {
        costs[p] = 1.0;
        phase_one = true;
      } else {
        costs[p] = 0.0;
      }
    }
    if (!phase_one) {
      for (int p = 0; p < m_; ++p) costs[p] = Cost(head_[p], false);
    }
    const Eigen::VectorXd y = Btran(costs);

    // Pricing.
    int entering = -1;
    double best = 0.0;
    double entering_d = 0.0;
    for (int k = 0; k < n_ + m_; ++k) {
      const BasisStatus s = status_[k];
      if (s == BasisStatus::kBasic || lower_[k] == upper_[k]) continue;
      const double d = Cost(k, phase_one) - ColumnDot(k, y);
      bool eligible = false;
      if (s == BasisStatus::kAtLower) eligible = d < -kOptimalityTolerance;
      else if (s == BasisStatus::kAtUpper) eligible = d > kOptimalityTolerance;
      else eligible = std::abs(d) > kOptimalityTolerance;
      if (!eligible) continue;
      if (bland) {
        entering = k;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = k;
        entering_d = d;
      }
    }
    if (entering < 0) {
      if (phase_one) return Finish(LpStatus::kInfeasible, iter);
      return Finish(LpStatus::kOptimal, iter);
    }

    LoadColumn(entering, column);
    const Eigen::VectorXd alpha = Ftran(column);
    const double dir = entering_d < 0.0 ? 1.0 : -1.0;

    // Harris two-pass ratio test.
    const double own_range = upper_[entering] - lower_[entering];
    double theta_max = own_range;
    auto blocking_bound = [&](int p, double rate, double* bound) {
      const int k = head_[p];
      if (rate < 0.0) {
        if (phase_one && x_[k] > upper_[k] + tol) *bound = upper_[k];
        else if (x_[k] < lower_[k] - tol) return false;
        else *bound = lower_[k];
      } else {
        if (phase_one && x_[k] < lower_[k] - tol) *bound = lower_[k];
        else if (x_[k] > upper_[k] + tol) return false;
        else *bound = upper_[k];
      }
      return std::isfinite(*bound);
    };
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= kPivotTolerance) continue;
      const double rate = -dir * alpha[p];
      double bound = 0.0;
      if (!blocking_bound(p, rate, &bound)) continue;
      const double relaxed = rate < 0.0 ? (x_[head_[p]] - (bound - tol)) / -rate
                                        : ((bound + tol) - x_[head_[p]]) / rate;
      theta_max = std::min(theta_max, relaxed);
    }
    int leaving = -1;
    double theta = 0.0;
    double leaving_bound = 0.0;
    if (std::isfinite(theta_max)) {
      double best_pivot = 0.0;
      for (int p = 0; p < m_; ++p) {
        if (std::abs(alpha[p]) <= kPivotTolerance) continue;
        const double rate = -dir * alpha[p];
        double bound = 0.0;
        if (!blocking_bound(p, rate, &bound)) continue;
        const double ratio = (bound - x_[head_[p]]) / rate;
        if (ratio > theta_max) continue;
        const bool better =
            bland ? (leaving < 0 || head_[p] < head_[leaving])
                  : std::abs(alpha[p]) > best_pivot;
        if (better) {
          best_pivot = std::abs(alpha[p]);
          leaving = p;
          theta = std::max(0.0, ratio);
          leaving_bound = bound;
        }
      }
    }
    const bool flip = std::isfinite(own_range) &&
                      (leaving < 0 || own_range <= theta);
    if (leaving < 0 && !flip) {
      if (phase_one) {
        // Phase one is bounded below; treat as a numerical breakdown and
        // retry from a fresh factorization once.
        if (++refactor_failures > 3 || !Refactor()) {
          return Finish(LpStatus::kNumericalFailure, iter);
        }
        continue;
      }
      return Finish(LpStatus::kUnbounded, iter);
    }
    if (flip) theta = own_range;

    degenerate_run = theta < kDegenerateStep ? degenerate_run + 1 : 0;
    bland = degenerate_run > options_.degenerate_run_for_bland;

    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[head_[p]] -= dir * theta * alpha[p];
    }
    if (flip) {
      if (dir > 0.0) {
        x_[entering] = upper_[entering];
        status_[entering] = BasisStatus::kAtUpper;
      } else {
        x_[entering] = lower_[entering];
        status_[entering] = BasisStatus::kAtLower;
      }
      continue;
    }
    x_[entering] += dir * theta;
    const int out = head_[leaving];
    x_[out] = leaving_bound;
    status_[out] = leaving_bound == upper_[out] && leaving_bound != lower_[out]
                       ? BasisStatus::kAtUpper
                       : BasisStatus::kAtLower;
    if (!Exchange(leaving, entering, alpha) && ++refactor_failures > 3) {
      return Finish(LpStatus::kNumericalFailure, iter);
    }
  }
}

bool SimplexSolver::Impl::Exchange(int leaving, int entering,
                                   const Eigen::VectorXd& alpha) {
  position_[head_[leaving]] = -1;
  head_[leaving] = entering;
  position_[entering] = leaving;
  status_[entering] = BasisStatus::kBasic;

  Eta eta;
  eta.position = leaving;
  eta.pivot = alpha[leaving];
  for (int p = 0; p < m_; ++p) {
    if (p != leaving && std::abs(alpha[p]) > 1e-14) {
      eta.entries.emplace_back(p, alpha[p]);
    }
  }
  etas_.push_back(std::move(eta));
  if (static_cast<int>(etas_.size()) < options_.refactor_interval) return true;
  if (Refactor()) return true;
  SetLogicalBasis();
  return Refactor();
}

SimplexSolver::Impl::DualOutcome SimplexSolver::Impl::DualPhase(
    std::int64_t limit, std::int64_t* iterations) {
  const double tol = kFeasibilityTolerance;
  auto worst_row = [&] {
    int row = -1;
    double worst = tol;
    for (int p = 0; p < m_; ++p) {
      const int k = head_[p];
      const double v = std::max(lower_[k] - x_[k], x_[k] - upper_[k]);
      if (v > worst) {
        worst = v;
        row = p;
      }
    }
    return row;
  };
  if (worst_row() < 0) return DualOutcome::kFeasible;

  Eigen::VectorXd costs(m_);
  auto duals = [&] {
    for (int p = 0; p < m_; ++p) costs[p] = Cost(head_[p], false);
    return Btran(costs);
  };
  // Put boxed nonbasics on the bound their reduced cost prefers. Anything
  // else that is dual infeasible leaves the job to primal simplex.
  {
    const Eigen::VectorXd y = duals();
    bool moved = false;
    for (int k = 0; k < n_ + m_; ++k) {
      const BasisStatus st = status_[k];
      if (st == BasisStatus::kBasic || lower_[k] == upper_[k]) continue;
      const double d = Cost(k, false) - ColumnDot(k, y);
      if (st == BasisStatus::kAtLower && d < -kDualTolerance) {
        if (!std::isfinite(upper_[k])) return DualOutcome::kSkipped;
        status_[k] = BasisStatus::kAtUpper;
        x_[k] = upper_[k];
        moved = true;
      } else if (st == BasisStatus::kAtUpper && d > kDualTolerance) {
        if (!std::isfinite(lower_[k])) return DualOutcome::kSkipped;
        status_[k] = BasisStatus::kAtLower;
        x_[k] = lower_[k];
        moved = true;
      } else if (st == BasisStatus::kFree && std::abs(d) > kDualTolerance) {
        return DualOutcome::kSkipped;
      }
    }
    if (moved) RecomputeBasics();
  }

  // Reduced costs, updated per pivot and recomputed after refactors.
  std::vector<double> d(n_ + m_, 0.0);
  auto reprice = [&] {
    const Eigen::VectorXd y = duals();
    for (int k = 0; k < n_ + m_; ++k) {
      d[k] = status_[k] == BasisStatus::kBasic ? 0.0 : Cost(k, false) - ColumnDot(k, y);
    }
  };
  reprice();
  struct Candidate {
    int k;
    double a;
    double d;
  };
  std::vector<Candidate> candidates;
  std::vector<double> arow(n_ + m_, 0.0);
  Eigen::VectorXd unit(m_);
  Eigen::VectorXd column(m_);
  int retries = 0;
  for (;;) {
    if (*iterations >= limit) return DualOutcome::kLimit;
    if (options_.deadline && (*iterations & 63) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      return DualOutcome::kTimeLimit;
    }
    const int p = worst_row();
    if (p < 0) return DualOutcome::kFeasible;
    const int leave = head_[p];
    const bool raise = x_[leave] < lower_[leave];
    const double target = raise ? lower_[leave] : upper_[leave];

    unit.setZero();
    unit[p] = 1.0;
    const Eigen::VectorXd rho = Btran(unit);

    // Harris two-pass dual ratio test.
    candidates.clear();
    double theta_max = kInfinity;
    for (int k = 0; k < n_ + m_; ++k) {
      const BasisStatus st = status_[k];
      arow[k] = 0.0;
      if (st == BasisStatus::kBasic) continue;
      if (lower_[k] == upper_[k]) {
        arow[k] = ColumnDot(k, rho);
        continue;
      }
      const double a = ColumnDot(k, rho);
      arow[k] = a;
      if (std::abs(a) <= kPivotTolerance) continue;
      const bool up = (st == BasisStatus::kAtLower) ||
                      (st == BasisStatus::kFree && ((a < 0.0) == raise));
      // x_B[p] moves by -a per unit increase of x_k.
      if (up != ((a < 0.0) == raise)) continue;
      const double dd = std::max(0.0, up ? d[k] : -d[k]);
      candidates.push_back({k, a, dd});
      theta_max = std::min(theta_max, (dd + kDualTolerance) / std::abs(a));
    }
    if (candidates.empty()) return DualOutcome::kInfeasible;
    int entering = -1;
    double best = 0.0;
    for (const Candidate& c : candidates) {
      if (c.d / std::abs(c.a) > theta_max) continue;
      if (std::abs(c.a) > best) {
        best = std::abs(c.a);
        entering = c.k;
      }
    }

    LoadColumn(entering, column);
    const Eigen::VectorXd alpha = Ftran(column);
    if (std::abs(alpha[p]) <= kPivotTolerance ||
        std::abs(alpha[p] - best * (alpha[p] < 0 ? -1.0 : 1.0)) >
            1e-6 * std::max(1.0, best)) {
      if (++retries > 3 || !Refactor()) return DualOutcome::kNumerical;
      continue;
    }
    const double t = (x_[leave] - target) / alpha[p];
    for (int i = 0; i < m_; ++i) {
      if (alpha[i] != 0.0) x_[head_[i]] -= alpha[i] * t;
    }
    x_[entering] += t;
    x_[leave] = target;
    status_[leave] = (raise || lower_[leave] == upper_[leave])
                         ? BasisStatus::kAtLower
                         : BasisStatus::kAtUpper;
    ++*iterations;
    const double step = d[entering] / arow[entering];
    for (int k = 0; k < n_ + m_; ++k) {
      if (arow[k] != 0.0) d[k] -= step * arow[k];
    }
    d[entering] = 0.0;
    d[leave] = -step;
    if (!Exchange(p, entering, alpha)) return DualOutcome::kNumerical;
    if (etas_.empty()) reprice();
  }
}

LpResult SimplexSolver::Impl::Finish(LpStatus status, std::int64_t iterations) {
  LpResult result;
  result.status = status;
  result.iterations = iterations;
  result.x.resize(n_);
  for (int j = 0; j < n_; ++j) result.x[j] = x_[j] * col_scale_[j];
  result.row_activity.resize(m_);
  for (int i = 0; i < m_; ++i) result.row_activity[i] = x_[n_ + i] / row_scale_[i];
  warm_ = status == LpStatus::kOptimal;
  if (status != LpStatus::kOptimal) return result;

  // Snap structurals onto bounds they sit on within tolerance.
  double objective = offset_;
  for (int j = 0; j < n_; ++j) objective += cost_[j] * x_[j];
  result.objective = objective;

  Eigen::VectorXd costs(m_);
  for (int p = 0; p < m_; ++p) costs[p] = Cost(head_[p], false);
  const Eigen::VectorXd y = Btran(costs);
  result.duals.resize(m_);
  for (int i = 0; i < m_; ++i) result.duals[i] = y[i] * row_scale_[i];
  result.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) {
    result.reduced_costs[j] = (cost_[j] - ColumnDot(j, y)) / col_scale_[j];
  }
  return result;
}

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : impl_(std::make_unique<Impl>(lp, options)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LpResult SimplexSolver::Solve() { return impl_->Solve(); }
void SimplexSolver::SetVariableBounds(int j, double lower, double upper) {
  impl_->SetVariableBounds(j, lower, upper);
}
std::pair<double, double> SimplexSolver::VariableBounds(int j) const {
  return impl_->VariableBounds(j);
}
int SimplexSolver::AddRow(const std::vector<std::pair<int, double>>& terms,
                          Sense sense, double rhs) {
  return impl_->AddRow(terms, sense, rhs);
}
int SimplexSolver::num_rows() const { return impl_->m(); }
int SimplexSolver::num_variables() const { return impl_->n(); }
Basis SimplexSolver::GetBasis() const { return impl_->GetBasis(); }
void SimplexSolver::SetBasis(const Basis& basis) { impl_->SetBasis(basis); }
void SimplexSolver::set_deadline(
    std::optional<std::chrono::steady_clock::time_point> d) {
  impl_->set_deadline(d);
}

LpResult SolveLp(const LinearProgram& lp, SimplexOptions options) {
  SimplexSolver solver(lp, options);
  return solver.Solve();
}

}  // namespace ncospan
