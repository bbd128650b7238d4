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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ncospan/branch_and_bound.hpp"
#include "ncospan/lp.hpp"
#include "oracles.hpp"

namespace {

using namespace ncospan;

struct RandomLp {
  LinearProgram lp;
  oracle::DenseLp dense;
};

// Boxed variables, mixed row senses. The oracle sees every row as "<=".
RandomLp MakeRandomLp(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RandomLp r;
  r.dense.c.resize(n);
  for (int j = 0; j < n; ++j) {
    const double lo = -5.0 * std::abs(u(rng)), hi = 5.0 * std::abs(u(rng)) + 0.1;
    const double c = u(rng);
    r.lp.AddVariable("v" + std::to_string(j), lo, hi, c);
    r.dense.c[j] = c;
    r.dense.lo.push_back(lo);
    r.dense.hi.push_back(hi);
  }
  const int rows = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < rows; ++i) {
    std::vector<double> a(n);
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) {
      a[j] = std::round(4.0 * u(rng));
      if (a[j] != 0.0) terms.emplace_back(j, a[j]);
    }
    const double b = 3.0 * u(rng);
    const int kind = static_cast<int>(rng() % 5);
    if (kind <= 2) {
      r.lp.AddRow(terms, Sense::kLessEqual, b);
      r.dense.a.push_back(a);
      r.dense.b.push_back(b);
    } else if (kind == 3) {
      r.lp.AddRow(terms, Sense::kGreaterEqual, b);
      for (double& v : a) v = -v;
      r.dense.a.push_back(a);
      r.dense.b.push_back(-b);
    } else {
      r.lp.AddRow(terms, Sense::kEqual, b);
      r.dense.a.push_back(a);
      r.dense.b.push_back(b);
      for (double& v : a) v = -v;
      r.dense.a.push_back(a);
      r.dense.b.push_back(-b);
    }
  }
  return r;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("one-variable lower bound") {
  LinearProgram lp;
  const int x = lp.AddVariable("x", -kInfinity, kInfinity, 1.0);
  lp.AddRow({{x, 1.0}}, Sense::kGreaterEqual, 3.0);
  const LpResult r = SolveLp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x[x] == doctest::Approx(3.0));
}

TEST_CASE("two-variable simplex corner") {
  LinearProgram lp;
  const int x = lp.AddVariable("x", 0, kInfinity, -1.0);
  const int y = lp.AddVariable("y", 0, kInfinity, -1.0);
  lp.AddRow({{x, 1.0}, {y, 1.0}}, Sense::kLessEqual, 1.0);
  const LpResult r = SolveLp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-1.0));
  CHECK(lp.MaxViolation(r.x) <= 1e-9);
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram bad;
  const int x = bad.AddVariable("x", 0, 1, 1.0);
  bad.AddRow({{x, 1.0}}, Sense::kGreaterEqual, 2.0);
  CHECK(SolveLp(bad).status == LpStatus::kInfeasible);
  LinearProgram open;
  const int y = open.AddVariable("y", 0, kInfinity, -1.0);
  open.AddRow({{y, 1.0}}, Sense::kGreaterEqual, 1.0);
  CHECK(SolveLp(open).status == LpStatus::kUnbounded);
}

TEST_CASE("random small programs match vertex enumeration") {
  std::mt19937_64 rng(7);
  int infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 4;
    const RandomLp r = MakeRandomLp(rng, n);
    const auto want = oracle::VertexEnumeration(r.dense);
    const LpResult got = SolveLp(r.lp);
    if (!want) {
      ++infeasible;
      CHECK(got.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(got.status == LpStatus::kOptimal);
    CHECK(got.objective == doctest::Approx(*want).epsilon(1e-7).scale(1.0));
    CHECK(r.lp.MaxViolation(got.x) <= 1e-7);
  }
  // Both branches of the comparison ran.
  CHECK(infeasible > 0);
  CHECK(infeasible < 400);
}

TEST_CASE("warm re-solve after bound changes matches a cold solve") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RandomLp r = MakeRandomLp(rng, 4);
    SimplexSolver warm(r.lp);
    warm.Solve();
    const double lo = r.lp.variable(0).lower, hi = r.lp.variable(0).upper;
    const double mid = 0.5 * (lo + hi);
    warm.SetVariableBounds(0, mid, hi);
    const LpResult a = warm.Solve();
    r.lp.variable(0).lower = mid;
    const LpResult b = SolveLp(r.lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::kOptimal) CHECK(a.objective == doctest::Approx(b.objective));
  }
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(3);
  const RandomLp r = MakeRandomLp(rng, 4);
  const LpResult a = SolveLp(r.lp), b = SolveLp(r.lp);
  CHECK(a.status == b.status);
  CHECK(a.x == b.x);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("integral root needs one node") {
  LinearProgram lp;
  const int a = lp.AddVariable("a", 0, 1, -1.0);
  const int b = lp.AddVariable("b", 0, 1, -1.0);
  lp.AddRow({{a, 1.0}, {b, 1.0}}, Sense::kLessEqual, 2.0);
  const BnBResult r = BranchAndBound(lp, {a, b});
  CHECK(r.status == BnBStatus::kOptimal);
  CHECK(r.nodes == 1);
  CHECK(r.incumbent == doctest::Approx(-2.0));
}

TEST_CASE("three binaries and a continuous match enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    std::vector<int> bins;
    std::vector<double> cost(4);
    for (int j = 0; j < 3; ++j) {
      cost[j] = u(rng);
      bins.push_back(lp.AddVariable("b" + std::to_string(j), 0, 1, cost[j]));
    }
    cost[3] = u(rng);
    const int y = lp.AddVariable("y", 0, 3, cost[3]);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> a(4);
      std::vector<std::pair<int, double>> t;
      for (int j = 0; j < 4; ++j) {
        a[j] = std::round(3.0 * u(rng));
        t.emplace_back(j, a[j]);
      }
      rows.push_back(a);
      rhs.push_back(2.0 * u(rng) + 1.0);
      lp.AddRow(t, Sense::kLessEqual, rhs.back());
    }
    // Oracle: every assignment of the binaries, then a 1-D LP in y.
    std::optional<double> best;
    for (int mask = 0; mask < 8; ++mask) {
      oracle::DenseLp d;
      d.c = {cost[3]};
      d.lo = {0.0};
      d.hi = {3.0};
      double fixed = 0.0;
      for (int j = 0; j < 3; ++j) fixed += cost[j] * (mask >> j & 1);
      for (int i = 0; i < 3; ++i) {
        double r = rhs[i];
        for (int j = 0; j < 3; ++j) r -= rows[i][j] * (mask >> j & 1);
        d.a.push_back({rows[i][3]});
        d.b.push_back(r);
      }
      if (auto v = oracle::VertexEnumeration(d)) {
        if (!best || fixed + *v < *best) best = fixed + *v;
      }
    }
    const BnBResult r = BranchAndBound(lp, bins);
    if (!best) {
      CHECK(r.status == BnBStatus::kInfeasible);
      continue;
    }
    REQUIRE(r.has_incumbent());
    CHECK(r.incumbent == doctest::Approx(*best).epsilon(1e-7).scale(1.0));
    CHECK(lp.MaxViolation(r.x) <= 1e-6);
    for (int j : bins) CHECK((r.x[j] == 0.0 || r.x[j] == 1.0));
    (void)y;
  }
}

namespace {

// 0/1 knapsack as a minimization.
LinearProgram Knapsack(int n, std::vector<int>& bins) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  LinearProgram lp;
  std::vector<std::pair<int, double>> w;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    bins.push_back(lp.AddVariable("k" + std::to_string(j), 0, 1, -u(rng)));
    const double wj = u(rng);
    total += wj;
    w.emplace_back(bins.back(), wj);
  }
  lp.AddRow(w, Sense::kLessEqual, 0.37 * total);
  return lp;
}

}  // namespace

TEST_CASE("gap limit is honoured and reported") {
  std::vector<int> bins;
  const LinearProgram lp = Knapsack(30, bins);
  BnBOptions opt;
  opt.limits.gap = 0.2;
  const BnBResult r = BranchAndBound(lp, bins, opt);
  REQUIRE(r.has_incumbent());
  CHECK((r.status == BnBStatus::kGapLimit || r.status == BnBStatus::kOptimal));
  CHECK(r.gap <= 0.2);
  CHECK(r.lower_bound <= r.incumbent + 1e-9);
  CHECK(r.gap == doctest::Approx(RelativeGap(r.incumbent, r.lower_bound)));
  CHECK(lp.MaxViolation(r.x) <= 1e-6);
}

TEST_CASE("node limit and determinism") {
  std::vector<int> bins;
  const LinearProgram lp = Knapsack(25, bins);
  BnBOptions opt;
  opt.limits.max_nodes = 5;
  const BnBResult a = BranchAndBound(lp, bins, opt);
  const BnBResult b = BranchAndBound(lp, bins, opt);
  CHECK(a.status == BnBStatus::kNodeLimit);
  CHECK(a.nodes == 5);
  CHECK(a.x == b.x);
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.incumbent == b.incumbent);
}

TEST_CASE("lower bound tightens as the node budget grows") {
  std::vector<int> bins;
  const LinearProgram lp = Knapsack(25, bins);
  double last = -kInfinity;
  for (int nodes : {1, 4, 16, 64, 256}) {
    BnBOptions opt;
    opt.limits.max_nodes = nodes;
    const BnBResult r = BranchAndBound(lp, bins, opt);
    CHECK(r.lower_bound >= last - 1e-9);
    last = r.lower_bound;
  }
}

TEST_CASE("infeasible root") {
  LinearProgram lp;
  const int a = lp.AddVariable("a", 0, 1, 1.0);
  lp.AddRow({{a, 1.0}}, Sense::kGreaterEqual, 2.0);
  const BnBResult r = BranchAndBound(lp, {a});
  CHECK(r.status == BnBStatus::kInfeasible);
  CHECK_FALSE(r.has_incumbent());
}

TEST_CASE("initial incumbent is kept when nothing beats it") {
  LinearProgram lp;
  const int a = lp.AddVariable("a", 0, 1, 1.0);
  const int b = lp.AddVariable("b", 0, 1, 1.0);
  lp.AddRow({{a, 1.0}, {b, 1.0}}, Sense::kGreaterEqual, 1.0);
  BnBOptions opt;
  opt.initial_incumbent = std::make_pair(1.0, std::vector<double>{1.0, 0.0});
  const BnBResult r = BranchAndBound(lp, {a, b}, opt);
  CHECK(r.incumbent == doctest::Approx(1.0));
  CHECK(r.status == BnBStatus::kOptimal);
}

}  // TEST_SUITE
