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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "ncospan/checker.hpp"
#include "ncospan/greedy.hpp"
#include "ncospan/milp.hpp"
#include "ncospan/relaxation.hpp"
#include "ncospan/scenario.hpp"
#include "ncospan/span.hpp"

namespace {

using namespace ncospan;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Scenario Fixture(const std::string& name) {
  return LoadScenario(std::filesystem::path(NCOSPAN_DATA_DIR) / name);
}

std::string SetText(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

Outcome SpanTable() {
  const std::vector<Channel> plan = WichitaChannelPlan();
  auto mhz = [&](std::vector<int> ids) {
    std::vector<Channel> used;
    for (const Channel& c : plan) {
      if (std::find(ids.begin(), ids.end(), c.id) != ids.end()) used.push_back(c);
    }
    return SpanFrequency(used) / 1e6;
  };
  const std::vector<std::pair<std::vector<int>, double>> table = {
      {{23, 47}, 150}, {{17, 23}, 42},      {{6, 47}, 592},     {{5, 6}, 12},  {{2, 47}, 620},
      {{5, 24}, 460},  {{17, 23, 24}, 48}, {{2, 5, 6}, 34},    {{17, 24}, 48}};
  int wrong = 0, rows = 0;
  for (const auto& [ids, want] : table) {
    ++rows;
    if (mhz(ids) != want) ++wrong;
  }
  for (const Channel& c : plan) {
    ++rows;
    if (mhz({c.id}) != 6.0) ++wrong;
  }
  return {wrong == 0, std::to_string(rows - wrong) + "/" + std::to_string(rows) + " exact"};
}

Outcome Remap() {
  const std::vector<int> got = RemapChannelIndices(WichitaChannelPlan());
  const std::vector<int> want{9, 13, 14, 81, 87, 88, 111};
  return {got == want, SetText(got)};
}

Outcome SmallOptimality() {
  int compared = 0, infeasible = 0, mismatched = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario sc = oracle::RandomSmallCase(seed);
    if (sc.num_links() > 3 || sc.num_channels() > 4 || sc.sessions.size() > 2) {
      return {false, "generated case out of range at seed " + std::to_string(seed)};
    }
    const oracle::Enumerated want = oracle::EnumerateOptimum(sc);
    const Solution got = SolveBnb(sc);
    ++compared;
    if (!want.best) {
      ++infeasible;
      if (got.has_solution()) ++mismatched;
      continue;
    }
    if (!got.has_solution()) {
      ++mismatched;
      continue;
    }
    const double rel = std::abs(got.breakdown.total - *want.best) / *want.best;
    worst = std::max(worst, rel);
    if (rel > 1e-4) ++mismatched;
  }
  return {mismatched == 0, std::to_string(compared) + " instances (" + std::to_string(infeasible) +
                               " infeasible), " + std::to_string(mismatched) +
                               " mismatched, max rel diff " + Fmt("%.2e", worst)};
}

Outcome HullSoundness() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -1.0;
  for (int pair = 0; pair < 10000; ++pair) {
    const double lo = u(rng) < 0.2 ? 0.0 : std::pow(10.0, -3.0 + 6.0 * u(rng));
    const double hi = lo + std::pow(10.0, -3.0 + 7.0 * u(rng));
    const HullSegments h = BuildHull(lo, hi);
    for (int k = 0; k < 100; ++k) {
      const double s = lo + (hi - lo) * u(rng);
      for (const HullInequality& seg : h.segments) {
        worst = std::max(worst, seg.Violation(s, std::log1p(s)) / seg.coef_c);
      }
    }
  }
  return {worst <= 1e-9, "1,000,000 points, max violation " + Fmt("%.2e", std::max(worst, 0.0))};
}

// Transmit-power-optimal channel set of a single link, by trying every
// subset with its closed-form water level.
std::vector<int> BruteForceTxSet(const Scenario& sc) {
  const std::vector<int> usable = sc.LinkChannels(0);
  const int n = static_cast<int>(usable.size());
  const double w = sc.channels[usable[0]].width_hz();
  const double r = sc.sessions[0].rate_bps;
  const double cap = std::min(sc.max_tx_power, sc.big_m);
  std::vector<double> log_a(n), a(n);
  for (int k = 0; k < n; ++k) {
    a[k] = sc.noise_density * w / sc.links[0].gain[usable[k]];
    log_a[k] = std::log2(a[k]);
  }
  double best = oracle::kInf;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Channel> used;
    double sum_log = 0.0;
    int size = 0;
    for (int k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        sum_log += log_a[k];
        ++size;
        used.push_back(sc.channels[usable[k]]);
      }
    }
    if (SpanFrequency(used) > sc.q_max_hz) continue;
    const double log_level = (r / w + sum_log) / size;
    double cost = 0.0;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      const double p = std::exp2(log_level) - a[k];
      ok = log_level > log_a[k] && p <= cap;
      cost += p;
    }
    if (ok && cost < best) {
      best = cost;
      best_mask = mask;
    }
  }
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    if (best_mask >> k & 1) out.push_back(usable[k]);
  }
  return out;
}

Outcome CaseLimits() {
  const Scenario base = Fixture("single-link.json");
  Scenario flat = base;
  flat.radio = base.radio.WithScaledSlopes(0.0);
  const std::vector<int> greedy_flat = SolveGreedy(flat, flat.seed).schedule.Channels(0);
  const std::vector<int> oracle_flat = BruteForceTxSet(flat);

  Scenario steep = base;
  steep.radio = base.radio.WithScaledSlopes(1e6);
  const std::vector<int> greedy_steep = SolveGreedy(steep, steep.seed).schedule.Channels(0);
  int best = -1;
  for (int m : base.LinkChannels(0)) {
    if (best < 0 || base.links[0].gain[m] > base.links[0].gain[best]) best = m;
  }
  const bool pass = greedy_flat == oracle_flat && greedy_steep == std::vector<int>{best};
  return {pass, "zero slopes greedy " + SetText(greedy_flat) + " brute force " +
                    SetText(oracle_flat) + "; x1e6 slopes greedy " + SetText(greedy_steep) +
                    " argmax " + std::to_string(best)};
}

SolveOptions Limits(double gap, double seconds) {
  SolveOptions o;
  o.limits.gap = gap;
  o.limits.time_limit_s = seconds;
  return o;
}

Outcome Reduction() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"single-link.json", "network12.json"}) {
    const Scenario sc = Fixture(name);
    const Solution g = SolveGreedy(sc, sc.seed);
    const Solution t = TxPowerMin(sc, Limits(1e-4, 300));
    const bool ok = g.has_solution() && t.has_solution() &&
                    g.breakdown.total <= 0.80 * t.breakdown.total;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += std::string(name) + " greedy " + Fmt("%.4g W", g.breakdown.total) + " txmin " +
              Fmt("%.4g W", t.breakdown.total) + " ratio " +
              Fmt("%.3f", g.breakdown.total / t.breakdown.total);
  }
  return {pass, detail + " (limit 0.80)"};
}

Outcome LowSlope() {
  Scenario sc = Fixture("single-link.json");
  sc.radio = RadioPreset("low-slope");
  const Solution g = SolveGreedy(sc, sc.seed);
  const Solution t = TxPowerMin(sc, Limits(1e-4, 300));
  const double ratio = g.breakdown.total / t.breakdown.total;
  return {g.has_solution() && t.has_solution() && std::abs(ratio - 1.0) <= 0.05,
          "greedy " + Fmt("%.4g W", g.breakdown.total) + " txmin " +
              Fmt("%.4g W", t.breakdown.total) + " ratio " + Fmt("%.3f", ratio)};
}

Outcome Feasibility() {
  int checked = 0, failed = 0;
  std::string first;
  for (const char* name : {"single-link.json", "chain3.json", "network12.json"}) {
    const Scenario sc = Fixture(name);
    const bool big = sc.num_nodes() > 3;
    const SolveOptions limits = Limits(big ? 0.25 : 1e-6, 300);
    std::vector<Solution> sols;
    const Solution greedy = SolveGreedy(sc, sc.seed);
    sols.push_back(greedy);
    SolveOptions warm = limits;
    if (greedy.has_solution()) warm.warm_start = greedy.schedule;
    sols.push_back(SolveBnb(sc, warm));
    sols.push_back(TxPowerMin(sc, limits));
    if (sc.num_links() == 1 && sc.sessions.size() == 1) sols.push_back(BestChannelMin(sc));
    for (const Solution& s : sols) {
      ++checked;
      const CheckReport r = CheckSolution(sc, s, 1e-6);
      if (!s.has_solution() || !r.ok()) {
        ++failed;
        if (first.empty()) {
          first = std::string(" first: ") + name + " " + s.method + " " + ToString(s.status) +
                  (r.ok() ? "" : " " + r.violations.front());
        }
      }
    }
  }
  return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) +
                           " solutions clean" + first};
}

Outcome BoundSanity() {
  const Scenario sc = Fixture("network12.json");
  SolveOptions o = Limits(0.25, 600);
  const Solution g = SolveGreedy(sc, sc.seed);
  if (g.has_solution()) o.warm_start = g.schedule;
  const Solution s = SolveBnb(sc, o);
  if (!s.bnb || !s.has_solution()) return {false, std::string("no incumbent, ") + ToString(s.status)};
  const BnBResult& b = *s.bnb;
  const bool pass = b.incumbent >= b.lower_bound && b.gap <= 0.25;
  return {pass, std::string(ToString(b.status)) + " incumbent " + Fmt("%.4g W", b.incumbent) +
                    " bound " + Fmt("%.4g W", b.lower_bound) + " gap " + Fmt("%.3f", b.gap) +
                    " nodes " + std::to_string(b.nodes) + Fmt(" %.1f s", s.runtime_s)};
}

// A chain with both directions on every hop plus forward skip links until
// the link count reaches \p links.
Scenario Sweep(int links, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-3.0, 3.0);
  Scenario sc;
  sc.channels = ContiguousChannelPlan(channels, 6.0, 473.0);
  std::vector<int> all;
  for (int m = 0; m < channels; ++m) all.push_back(m);
  int nodes = 2;
  while (2 * (nodes - 1) + (nodes - 2) < links) ++nodes;
  for (int i = 0; i < nodes; ++i) sc.nodes.push_back({i + 1, 100.0 * i, 0.0, all});
  auto gains = [&](double hops) {
    std::vector<double> g;
    for (int m = 0; m < channels; ++m) {
      g.push_back(1e-3 * std::pow(100.0 * hops, -3.0) * std::pow(10.0, jitter(rng) / 10.0));
    }
    return g;
  };
  for (int i = 0; i + 1 < nodes && sc.num_links() < links; ++i) {
    sc.links.push_back({i, i + 1, gains(1)});
    if (sc.num_links() < links) sc.links.push_back({i + 1, i, gains(1)});
  }
  for (int i = 0; i + 2 < nodes && sc.num_links() < links; ++i) sc.links.push_back({i, i + 2, gains(2)});
  sc.sessions = {{0, nodes - 1, 1e6}, {nodes - 1, 0, 1e6}};
  sc.noise_density = 4e-21;
  sc.interference_threshold = 0.1 * 4e-21 * 6e6;
  sc.max_tx_power = sc.big_m = 4.0;
  sc.q_max_hz = 6e6 * channels;
  sc.radio = RadioPreset("high-slope");
  sc.Validate();
  return sc;
}

Outcome Complexity() {
  constexpr double kC = 1.0;
  double worst = 0.0;
  int runs = 0;
  for (int e : {4, 8, 12, 16, 20, 24, 30}) {
    for (int m : {2, 4, 8, 12}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Scenario sc = Sweep(e, m, seed);
        const GreedyResult g = GreedySchedule(sc, InitialRoutes(sc), seed);
        const double bound = static_cast<double>(sc.num_links()) * sc.num_links() * m * m;
        worst = std::max(worst, g.counters.candidate_evaluations / bound);
        ++runs;
      }
    }
  }
  return {worst <= kC, std::to_string(runs) + " runs, E 4..30, M 2..12, max evaluations/(E^2 M^2) " +
                           Fmt("%.4f", worst) + " (c = 1)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, SpanTable},   {2, Remap},     {3, SmallOptimality}, {4, HullSoundness},
      {5, CaseLimits},  {6, Reduction}, {7, LowSlope},        {8, Feasibility},
      {9, BoundSanity}, {10, Complexity}};
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %d: %s %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
