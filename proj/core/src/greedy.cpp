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

#include "ncospan/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <random>

#include "ncospan/error.hpp"

namespace ncospan {

namespace {

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string LinkName(const Scenario& sc, int l) {
  return std::to_string(sc.nodes[sc.links[l].tx].id) + "->" +
         std::to_string(sc.nodes[sc.links[l].rx].id);
}

// Circuit power of one node side given its channel use counts.
double SideCircuit(const Scenario& sc, const std::vector<int>& use, int extra, bool tx) {
  double lo = kInfinity, hi = -kInfinity;
  for (int m = 0; m < sc.num_channels(); ++m) {
    if (use[m] == 0 && m != extra) continue;
    lo = std::min(lo, sc.channels[m].lower_edge_mhz());
    hi = std::max(hi, sc.channels[m].upper_edge_mhz());
  }
  if (hi < lo) return 0.0;
  const double span = (hi - lo) * 1e6;
  const RadioProfile& r = sc.radio;
  return tx ? r.alpha1() + r.alpha2() * 2.0 * span : r.beta1() + r.beta2() * 2.0 * span;
}

}  // namespace

RoutingState InitialRoutes(const Scenario& sc) {
  const int n = sc.num_nodes();
  const int n_sess = static_cast<int>(sc.sessions.size());
  std::vector<double> weight(sc.num_links(), kInfinity);
  for (int l = 0; l < sc.num_links(); ++l) {
    const auto chans = sc.LinkChannels(l);
    if (chans.empty()) continue;
    double g = 0.0;
    for (int m : chans) g += sc.links[l].gain[m];
    g /= static_cast<double>(chans.size());
    if (g > 0.0) weight[l] = 1.0 / g;
  }

  RoutingState rs;
  rs.paths.resize(n_sess);
  rs.on_path.assign(sc.num_links(), std::vector<char>(n_sess, 0));
  rs.demand_bps.assign(sc.num_links(), 0.0);
  for (int k = 0; k < n_sess; ++k) {
    const Session& ses = sc.sessions[k];
    std::vector<double> dist(n, kInfinity);
    std::vector<int> via(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[ses.source] = 0.0;
    queue.emplace(0.0, ses.source);
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > dist[u]) continue;
      for (int l = 0; l < sc.num_links(); ++l) {
        const Link& link = sc.links[l];
        if (link.tx != u || !std::isfinite(weight[l])) continue;
        const double nd = d + weight[l];
        if (nd < dist[link.rx]) {
          dist[link.rx] = nd;
          via[link.rx] = l;
          queue.emplace(nd, link.rx);
        }
      }
    }
    if (!std::isfinite(dist[ses.dest])) {
      throw InfeasibleError("session " + std::to_string(sc.nodes[ses.source].id) + "->" +
                            std::to_string(sc.nodes[ses.dest].id) + " is disconnected");
    }
    std::vector<int> path{ses.dest};
    for (int v = ses.dest; v != ses.source;) {
      const int l = via[v];
      rs.on_path[l][k] = 1;
      rs.demand_bps[l] += ses.rate_bps;
      v = sc.links[l].tx;
      path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    rs.paths[k] = std::move(path);
  }
  for (int l = 0; l < sc.num_links(); ++l) {
    if (rs.demand_bps[l] > 0.0) rs.active.push_back(l);
  }
  return rs;
}

bool InterferenceBlocked(const Scenario& sc, int ab, int m, double power,
                         const Schedule& x, const std::vector<std::vector<double>>& p,
                         std::int64_t* scans) {
  const int a = sc.links[ab].tx;
  const int b = sc.links[ab].rx;
  const double limit = sc.interference_threshold;
  for (int l = 0; l < sc.num_links(); ++l) {
    if (l == ab || !x.at(l, m)) continue;
    if (scans) ++*scans;
    const int i = sc.links[l].tx;
    const int j = sc.links[l].rx;
    if (i == a || i == b || j == a || j == b) return true;
    if (power * sc.CrossGain(a, j, m) > limit) return true;
    if (p[l][m] * sc.CrossGain(i, b, m) > limit) return true;
  }
  return false;
}

GreedyResult GreedySchedule(const Scenario& sc, const RoutingState& rs, std::uint64_t seed) {
  const int n_links = sc.num_links();
  const int n_ch = sc.num_channels();
  const double k_pa = sc.radio.k_pa();
  const double cap = std::min(sc.max_tx_power, sc.big_m);

  GreedyResult out;
  out.schedule = Schedule(n_links, n_ch);
  Schedule& x = out.schedule;
  std::vector<std::vector<double>> p(n_links, std::vector<double>(n_ch, 0.0));
  std::vector<std::vector<int>> tx_use(sc.num_nodes(), std::vector<int>(n_ch, 0));
  std::vector<std::vector<int>> rx_use = tx_use;

  auto split_power = [&](int l, int m, double share) {
    return RepairPower(share, sc.channels[m].width_hz(), sc.links[l].gain[m], sc.noise_density);
  };

  double power = 0.0;
  int unserved = static_cast<int>(rs.active.size());
  std::vector<int> order = rs.active;
  std::mt19937_64 rng(seed);

  for (int pass = 0; pass < n_ch; ++pass) {
    ++out.counters.passes;
    std::shuffle(order.begin(), order.end(), rng);
    int flag = 0;
    for (int ab : order) {
      const int a = sc.links[ab].tx;
      const int b = sc.links[ab].rx;
      const std::vector<int> current = x.Channels(ab);
      const int count = static_cast<int>(current.size());
      double old_rf = 0.0;
      for (int m : current) old_rf += k_pa * p[ab][m];
      const double tx_before = SideCircuit(sc, tx_use[a], -1, true);
      const double rx_before = SideCircuit(sc, rx_use[b], -1, false);

      int best_m = -1;
      double best_power = kInfinity;
      const int cand_unserved = unserved - (count == 0 ? 1 : 0);
      for (int m : sc.LinkChannels(ab)) {
        if (x.at(ab, m)) continue;
        ++out.counters.candidate_evaluations;
        const double share = rs.demand_bps[ab] / (count + 1);
        const double pm = split_power(ab, m, share);
        if (pm > cap) continue;
        if (InterferenceBlocked(sc, ab, m, pm, x, p, &out.counters.interference_scans)) continue;
        double new_rf = k_pa * pm;
        for (int mm : current) new_rf += k_pa * split_power(ab, mm, share);
        const double candidate = power + new_rf - old_rf +
                                 SideCircuit(sc, tx_use[a], m, true) - tx_before +
                                 SideCircuit(sc, rx_use[b], m, false) - rx_before;
        if (candidate < best_power) {
          best_power = candidate;
          best_m = m;
        }
      }
      const bool better = best_m >= 0 && (cand_unserved < unserved || best_power < power);
      if (!better) {
        ++flag;
        continue;
      }
      x.set(ab, best_m);
      ++tx_use[a][best_m];
      ++rx_use[b][best_m];
      const double share = rs.demand_bps[ab] / (count + 1);
      for (int m : x.Channels(ab)) p[ab][m] = split_power(ab, m, share);
      power = best_power;
      unserved = cand_unserved;
      ++out.counters.commits;
      out.trace.push_back(power);
      out.unserved_after_commit.push_back(unserved);
    }
    if (flag == static_cast<int>(order.size())) break;
  }

  out.tracked_power = power;
  out.provisional = Allocation::Zero(sc);
  out.provisional.power = p;
  for (int l : rs.active) {
    const std::vector<int> chans = x.Channels(l);
    if (chans.empty()) {
      out.unserved.push_back("link " + LinkName(sc, l) +
                             " has no channel clear of interference and power limits");
      continue;
    }
    for (int m : chans) {
      for (std::size_t k = 0; k < sc.sessions.size(); ++k) {
        if (rs.on_path[l][k]) {
          out.provisional.flow[l][m][k] = sc.sessions[k].rate_bps / static_cast<double>(chans.size());
        }
      }
    }
  }
  return out;
}

Solution FinalOptimize(const Scenario& sc, const GreedyResult& greedy, const MilpOptions& options) {
  Solution provisional;
  provisional.method = "greedy";
  provisional.schedule = greedy.schedule;
  provisional.allocation = greedy.provisional;
  Finalize(sc, provisional);
  if (!greedy.unserved.empty()) {
    provisional.status = SolveStatus::kInfeasible;
    provisional.warnings = greedy.unserved;
    return provisional;
  }
  provisional.status = SolveStatus::kSolved;

  std::optional<Solution> optimized = SolveFixedSchedule(sc, greedy.schedule, options);
  if (!optimized || optimized->status != SolveStatus::kSolved) {
    provisional.warnings.push_back("final optimization failed; keeping the equal-split allocation");
    return provisional;
  }
  optimized->method = "greedy";
  if (optimized->breakdown.total > provisional.breakdown.total) {
    provisional.warnings.push_back("final optimization did not improve the equal split");
    return provisional;
  }
  return *optimized;
}

Solution SolveGreedy(const Scenario& sc, std::uint64_t seed, const MilpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Solution sol;
  try {
    const RoutingState routes = InitialRoutes(sc);
    const GreedyResult greedy = GreedySchedule(sc, routes, seed);
    sol = FinalOptimize(sc, greedy, options);
  } catch (const InfeasibleError& e) {
    sol.method = "greedy";
    sol.status = SolveStatus::kInfeasible;
    sol.schedule = Schedule(sc.num_links(), sc.num_channels());
    sol.allocation = Allocation::Zero(sc);
    Finalize(sc, sol);
    sol.warnings.push_back(e.what());
  }
  sol.runtime_s = Seconds(start);
  return sol;
}

Solution TxPowerMin(const Scenario& sc, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Scenario circuit_free = sc;
  circuit_free.radio = sc.radio.CircuitFree();
  Solution sol = SolveBnb(circuit_free, options);
  sol.method = "txmin";
  if (sol.has_solution()) {
    // Only channels that carry traffic stay scheduled.
    for (int l = 0; l < sc.num_links(); ++l) {
      for (int m = 0; m < sc.num_channels(); ++m) {
        if (sol.allocation.LinkChannelFlow(l, m) <= 1e-3) {
          sol.schedule.set(l, m, false);
          std::fill(sol.allocation.flow[l][m].begin(), sol.allocation.flow[l][m].end(), 0.0);
        }
      }
    }
    RepairResult repair = RepairPowers(sc, sol.schedule, sol.allocation);
    sol.allocation.power = std::move(repair.power);
    if (!repair.ok()) {
      sol.status = SolveStatus::kInfeasible;
      sol.warnings.insert(sol.warnings.end(), repair.failures.begin(), repair.failures.end());
    }
  }
  Finalize(sc, sol);
  sol.runtime_s = Seconds(start);
  return sol;
}

Solution BestChannelMin(const Scenario& sc) {
  if (sc.num_links() != 1 || sc.sessions.size() != 1) {
    throw Error("best-channel baseline supports exactly one link and one session");
  }
  const Session& ses = sc.sessions[0];
  const Link& link = sc.links[0];
  if (link.tx != ses.source || link.rx != ses.dest) {
    throw Error("best-channel baseline: the link must join the session endpoints");
  }
  const auto start = std::chrono::steady_clock::now();
  Solution sol;
  sol.method = "bestchan";
  sol.schedule = Schedule(1, sc.num_channels());
  sol.allocation = Allocation::Zero(sc);
  int best = -1;
  for (int m : sc.LinkChannels(0)) {
    if (best < 0 || link.gain[m] > link.gain[best]) best = m;
  }
  sol.status = SolveStatus::kInfeasible;
  if (best >= 0) {
    const double p = RepairPower(ses.rate_bps, sc.channels[best].width_hz(), link.gain[best],
                                 sc.noise_density);
    sol.schedule.set(0, best);
    sol.allocation.flow[0][best][0] = ses.rate_bps;
    sol.allocation.power[0][best] = p;
    if (p <= std::min(sc.max_tx_power, sc.big_m)) {
      sol.status = SolveStatus::kSolved;
    } else {
      sol.warnings.push_back("best channel needs more than the power cap");
      sol.schedule = Schedule(1, sc.num_channels());
      sol.allocation = Allocation::Zero(sc);
    }
  }
  Finalize(sc, sol);
  sol.runtime_s = Seconds(start);
  return sol;
}

}  // namespace ncospan
