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

// Exhaustive optimum for tiny networks: every schedule, then the exact
// convex allocation for that schedule. Reads Scenario fields only.
#ifndef NCOSPAN_TESTS_ENUMERATION_HPP_
#define NCOSPAN_TESTS_ENUMERATION_HPP_

#include <cmath>
#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncospan/scenario.hpp"
#include "oracles.hpp"

namespace oracle {

struct Enumerated {
  std::optional<double> best;  // W, nullopt when nothing is feasible
  std::int64_t schedules = 0;
  std::int64_t feasible = 0;
};

namespace detail {

using Paths = std::vector<std::vector<int>>;  // link lists

inline void SimplePaths(const ncospan::Scenario& sc, const std::vector<char>& usable,
                        int at, int dest, std::vector<char>& seen, std::vector<int>& trail,
                        Paths& out) {
  if (at == dest) {
    out.push_back(trail);
    return;
  }
  for (int l = 0; l < sc.num_links(); ++l) {
    const auto& k = sc.links[l];
    if (!usable[l] || k.tx != at || seen[k.rx]) continue;
    seen[k.rx] = 1;
    trail.push_back(l);
    SimplePaths(sc, usable, k.rx, dest, seen, trail, out);
    trail.pop_back();
    seen[k.rx] = 0;
  }
}

}  // namespace detail

inline Enumerated EnumerateOptimum(const ncospan::Scenario& sc) {
  const int L = sc.num_links(), M = sc.num_channels(), N = sc.num_nodes();
  const double kpa = std::pow(10.0, sc.radio.papr_db / 10.0) / sc.radio.drain_efficiency;
  const double a1 = sc.radio.dac_intercept + sc.radio.tx_fixed;
  const double b1 = sc.radio.adc_intercept + sc.radio.rx_fixed;
  const double a2 = sc.radio.dac_slope, b2 = sc.radio.adc_slope;
  const double pcap = std::min(sc.max_tx_power, sc.big_m);

  // Slots are the (link, channel) pairs the endpoints share.
  std::vector<std::pair<int, int>> slots;
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < M; ++m) {
      if (sc.links[l].gain[m] > 0.0) slots.emplace_back(l, m);
    }
  }
  auto cross = [&](int from, int to, int m) {
    for (const auto& k : sc.links) {
      if (k.tx == from && k.rx == to) return k.gain[m];
    }
    return 0.0;
  };

  Enumerated out;
  const std::uint64_t count = 1ull << slots.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    ++out.schedules;
    std::vector<std::vector<char>> x(L, std::vector<char>(M, 0));
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1) x[slots[s].first][slots[s].second] = 1;
    }
    // Half-duplex.
    bool ok = true;
    for (int i = 0; i < N && ok; ++i) {
      for (int m = 0; m < M && ok; ++m) {
        int touch = 0;
        for (int l = 0; l < L; ++l) {
          touch += x[l][m] && (sc.links[l].tx == i || sc.links[l].rx == i);
        }
        ok = touch <= 1;
      }
    }
    if (!ok) continue;
    // Spans, bundle and circuit power.
    double circuit = 0.0;
    for (int i = 0; i < N && ok; ++i) {
      for (int side = 0; side < 2; ++side) {
        std::vector<int> used;
        for (int m = 0; m < M; ++m) {
          for (int l = 0; l < L; ++l) {
            const int end = side == 0 ? sc.links[l].tx : sc.links[l].rx;
            if (x[l][m] && end == i) {
              used.push_back(m);
              break;
            }
          }
        }
        if (used.empty()) continue;
        std::vector<double> centers;
        for (const auto& c : sc.channels) centers.push_back(c.center_mhz * 1e6);
        // Uniform width across the small cases.
        const double span = PairwiseSpan(centers, sc.channels[0].width_hz(), used);
        if (span > sc.q_max_hz * (1.0 + 1e-12)) ok = false;
        circuit += side == 0 ? a1 + a2 * 2.0 * span : b1 + b2 * 2.0 * span;
      }
    }
    if (!ok) continue;
    // Per link-channel power caps, then flow caps.
    std::vector<std::vector<double>> a(L), fcap(L);
    for (int l = 0; l < L; ++l) {
      for (int m = 0; m < M; ++m) {
        if (!x[l][m]) continue;
        double cap = pcap;
        for (int o = 0; o < L; ++o) {
          if (o == l || !x[o][m]) continue;
          const auto& ij = sc.links[o];
          const auto& kh = sc.links[l];
          if (kh.tx == ij.tx || kh.tx == ij.rx || kh.rx == ij.tx || kh.rx == ij.rx) continue;
          const double g = cross(kh.tx, ij.rx, m);
          if (g > 0.0) cap = std::min(cap, sc.interference_threshold / g);
        }
        const double w = sc.channels[m].width_hz();
        const double n0w = sc.noise_density * w;
        const double g = sc.links[l].gain[m];
        a[l].push_back(kpa * n0w / g);
        fcap[l].push_back(w * std::log2(1.0 + g * cap / n0w));
      }
    }
    // Routes on links with at least one channel.
    std::vector<char> usable(L, 0);
    for (int l = 0; l < L; ++l) usable[l] = !a[l].empty();
    std::vector<detail::Paths> paths(sc.sessions.size());
    for (std::size_t k = 0; k < sc.sessions.size() && ok; ++k) {
      std::vector<char> seen(N, 0);
      std::vector<int> trail;
      seen[sc.sessions[k].source] = 1;
      detail::SimplePaths(sc, usable, sc.sessions[k].source, sc.sessions[k].dest, seen, trail,
                          paths[k]);
      ok = !paths[k].empty() && paths[k].size() <= 2;
    }
    if (!ok) continue;
    int split = -1;
    for (std::size_t k = 0; k < paths.size(); ++k) {
      if (paths[k].size() == 2) {
        if (split >= 0) throw std::logic_error("oracle handles one split session");
        split = static_cast<int>(k);
      }
    }
    const double w = sc.channels[0].width_hz();
    // RF power when the split session sends t on its first path. Past the
    // capacity edge a steep linear penalty keeps the function convex.
    double excess = 0.0;
    auto rf = [&](double t) {
      std::vector<double> demand(L, 0.0);
      for (std::size_t k = 0; k < paths.size(); ++k) {
        const double r = sc.sessions[k].rate_bps;
        if (static_cast<int>(k) == split) {
          for (int l : paths[k][0]) demand[l] += t;
          for (int l : paths[k][1]) demand[l] += r - t;
        } else {
          for (int l : paths[k][0]) demand[l] += r;
        }
      }
      double cost = 0.0;
      excess = 0.0;
      for (int l = 0; l < L; ++l) {
        if (demand[l] <= 0.0) continue;
        double room = 0.0;
        for (double c : fcap[l]) room += c;
        const double d = std::min(demand[l], room * (1.0 - 1e-12));
        cost += WaterFill(a[l], fcap[l], w, d).cost;
        excess += demand[l] - d;
      }
      return cost + 1e9 * excess;
    };
    double power;
    if (split < 0) {
      power = rf(0.0);
    } else {
      const auto [t, v] = GoldenMin(rf, 0.0, sc.sessions[split].rate_bps, 120);
      power = rf(t);
      (void)v;
    }
    if (excess > 1e-6) continue;
    ++out.feasible;
    const double total = power + circuit;
    if (!out.best || total < *out.best) out.best = total;
  }
  return out;
}

// Random tiny network: at most 3 links, 4 channels and 2 sessions.
inline ncospan::Scenario RandomSmallCase(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  ncospan::Scenario sc;
  const int m = 2 + pick(3);
  sc.channels = ncospan::ContiguousChannelPlan(m, 6.0, 473.0);
  const int family = pick(6);
  struct Shape {
    int nodes;
    std::vector<std::pair<int, int>> links;
    std::vector<std::pair<int, int>> sessions;
  };
  const Shape shapes[6] = {
      {2, {{0, 1}}, {{0, 1}}},
      {3, {{0, 1}, {1, 2}}, {{0, 2}}},
      {3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 2}}},
      {4, {{0, 1}, {2, 3}, {2, 1}}, {{0, 1}, {2, 3}}},
      {3, {{0, 1}, {1, 2}}, {{0, 2}, {1, 2}}},
      {2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}},
  };
  const Shape& sh = shapes[family];
  for (int i = 0; i < sh.nodes; ++i) {
    ncospan::Node n{i + 1, 100.0 * i, 0.0, {}};
    for (int c = 0; c < m; ++c) {
      if (m > 1 && c == m - 1 && u(rng) < 0.3) continue;  // some nodes lose the top channel
      n.channels.push_back(c);
    }
    sc.nodes.push_back(n);
  }
  const double n0 = 4.0e-21;
  for (auto [t, r] : sh.links) {
    ncospan::Link k{t, r, std::vector<double>(m, 0.0)};
    const bool interferer = family == 3 && t == 2 && r == 1;
    for (int c = 0; c < m; ++c) {
      const auto& ta = sc.nodes[t].channels;
      const auto& ra = sc.nodes[r].channels;
      if (std::find(ta.begin(), ta.end(), c) == ta.end() ||
          std::find(ra.begin(), ra.end(), c) == ra.end()) {
        continue;
      }
      const double db = interferer ? -150.0 + 25.0 * u(rng) : -125.0 + 20.0 * u(rng);
      k.gain[c] = std::pow(10.0, db / 10.0);
    }
    sc.links.push_back(k);
  }
  for (auto [s, d] : sh.sessions) sc.sessions.push_back({s, d, 1e6 + 14e6 * u(rng)});
  sc.noise_density = n0;
  sc.interference_threshold = 0.1 * n0 * 6e6;
  sc.max_tx_power = 1.0;
  sc.big_m = 1.0;
  sc.q_max_hz = 6e6 * (1 + pick(m));
  const char* radios[] = {"high-slope", "low-slope"};
  sc.radio = ncospan::RadioPreset(radios[pick(2)]);
  if (u(rng) < 0.25) sc.radio = sc.radio.CircuitFree();
  sc.seed = seed;
  return sc;
}

}  // namespace oracle

#endif  // NCOSPAN_TESTS_ENUMERATION_HPP_
