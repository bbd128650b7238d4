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

#include "ncospan/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "ncospan/error.hpp"
#include "ncospan/relaxation.hpp"

namespace ncospan {

namespace {

constexpr double kMega = 1e6;
constexpr double kRepairTolerance = 1e-6;

std::string Key(const char* tag, int a, int b) {
  return std::string(tag) + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

// Per-node link-channel incidence.
struct Incidence {
  std::vector<std::vector<std::pair<int, int>>> out;  // (link, channel)
  std::vector<std::vector<std::pair<int, int>>> in;
};

Incidence BuildIncidence(const Scenario& sc) {
  Incidence inc;
  inc.out.resize(sc.num_nodes());
  inc.in.resize(sc.num_nodes());
  for (int l = 0; l < sc.num_links(); ++l) {
    for (int m : sc.LinkChannels(l)) {
      inc.out[sc.links[l].tx].emplace_back(l, m);
      inc.in[sc.links[l].rx].emplace_back(l, m);
    }
  }
  return inc;
}

std::vector<int> DistinctChannels(const std::vector<std::pair<int, int>>& lc) {
  std::vector<int> ms;
  for (const auto& [l, m] : lc) ms.push_back(m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

bool Excluded(const Link& link, const Session& session) {
  return link.rx == session.source || link.tx == session.dest;
}

bool Reachable(const Scenario& sc, int from, int to) {
  std::vector<char> seen(sc.num_nodes(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == to) return true;
    for (int l = 0; l < sc.num_links(); ++l) {
      const Link& k = sc.links[l];
      if (k.tx == u && !seen[k.rx] && !sc.LinkChannels(l).empty()) {
        seen[k.rx] = 1;
        queue.push_back(k.rx);
      }
    }
  }
  return false;
}

}  // namespace

MilpModel BuildMilp(const Scenario& sc, const MilpOptions& opt) {
  MilpModel model;
  LinearProgram& lp = model.lp;
  VariableMap& v = model.vars;
  const int n_nodes = sc.num_nodes();
  const int n_links = sc.num_links();
  const int n_ch = sc.num_channels();
  const int n_sess = static_cast<int>(sc.sessions.size());
  const RadioProfile& radio = sc.radio;

  v.x.assign(n_links, std::vector<int>(n_ch, -1));
  v.p = v.s = v.c = v.x;
  v.f.assign(n_links, std::vector<std::vector<int>>(n_ch, std::vector<int>(n_sess, -1)));

  for (int k = 0; k < n_sess; ++k) {
    if (!Reachable(sc, sc.sessions[k].source, sc.sessions[k].dest)) {
      model.warnings.push_back("session " + std::to_string(k) +
                               " has no path; the model is infeasible");
    }
  }

  // Link-channel variables.
  for (int l = 0; l < n_links; ++l) {
    const Link& link = sc.links[l];
    for (int m : sc.LinkChannels(l)) {
      const double snr_cap = sc.max_tx_power * link.gain[m] /
                             (sc.noise_density * sc.channels[m].width_hz());
      v.x[l][m] = lp.AddVariable(Key("x", l, m), 0.0, 1.0);
      v.binaries.push_back(v.x[l][m]);
      v.p[l][m] = lp.AddVariable(Key("p", l, m), 0.0, sc.max_tx_power);
      v.s[l][m] = lp.AddVariable(Key("s", l, m), 0.0, snr_cap);
      v.c[l][m] = lp.AddVariable(Key("c", l, m), 0.0, kInfinity);
      for (int k = 0; k < n_sess; ++k) {
        if (Excluded(link, sc.sessions[k])) continue;
        v.f[l][m][k] = lp.AddVariable(Key("f", l, m) + "(" + std::to_string(k) + ")",
                                      0.0, kInfinity, opt.flow_cost);
      }
    }
  }

  const Incidence inc = BuildIncidence(sc);
  const double q_cap = sc.q_max_hz / kMega;
  v.q_t.assign(n_nodes, -1);
  v.q_r.assign(n_nodes, -1);
  v.alpha1.assign(n_nodes, -1);
  v.beta1.assign(n_nodes, -1);
  for (int i = 0; i < n_nodes; ++i) {
    const std::string id = std::to_string(sc.nodes[i].id);
    if (!inc.out[i].empty()) {
      v.q_t[i] = lp.AddVariable("q_t[" + id + "]", 0.0, q_cap);
      v.alpha1[i] = lp.AddVariable("alpha1[" + id + "]", 0.0, kInfinity);
    }
    if (!inc.in[i].empty()) {
      v.q_r[i] = lp.AddVariable("q_r[" + id + "]", 0.0, q_cap);
      v.beta1[i] = lp.AddVariable("beta1[" + id + "]", 0.0, kInfinity);
    }
  }
  v.p_tot = lp.AddVariable("P_tot", 0.0, kInfinity, 1.0);

  // Half-duplex: one incident link per node and channel.
  for (int i = 0; i < n_nodes; ++i) {
    for (int m = 0; m < n_ch; ++m) {
      std::vector<std::pair<int, double>> terms;
      for (const auto& [l, mm] : inc.out[i]) if (mm == m) terms.emplace_back(v.x[l][m], 1.0);
      for (const auto& [l, mm] : inc.in[i]) if (mm == m) terms.emplace_back(v.x[l][m], 1.0);
      if (!terms.empty()) lp.AddRow(std::move(terms), Sense::kLessEqual, 1.0, Key("hd", i, m));
    }
  }

  // Interference: x_ij^m = 1 caps p_kh^m at P_I / g_kj^m.
  std::vector<std::vector<int>> link_of(n_nodes, std::vector<int>(n_nodes, -1));
  for (int l = 0; l < n_links; ++l) link_of[sc.links[l].tx][sc.links[l].rx] = l;
  for (int a = 0; a < n_links; ++a) {
    const Link& ij = sc.links[a];
    for (int b = 0; b < n_links; ++b) {
      if (a == b) continue;
      const Link& kh = sc.links[b];
      if (kh.tx == ij.tx || kh.tx == ij.rx || kh.rx == ij.tx || kh.rx == ij.rx) continue;
      const int cross = link_of[kh.tx][ij.rx];
      for (int m = 0; m < n_ch; ++m) {
        if (v.x[a][m] < 0 || v.p[b][m] < 0) continue;
        const double g = cross >= 0 ? sc.links[cross].gain[m] : 0.0;
        const double coef = g > 0.0 ? sc.max_tx_power - sc.interference_threshold / g : -1.0;
        if (coef <= 0.0) {
          ++model.dropped_interference_pairs;
          continue;
        }
        lp.AddRow({{v.p[b][m], 1.0}, {v.x[a][m], coef}}, Sense::kLessEqual,
                  sc.max_tx_power, Key("int", a, b));
        ++model.interference_rows;
      }
    }
  }

  struct Capacity {
    int x, s, c;
    double width_mhz;
  };
  std::vector<Capacity> capacity;
  for (int l = 0; l < n_links; ++l) {
    const Link& link = sc.links[l];
    for (int m : sc.LinkChannels(l)) {
      const double w_hz = sc.channels[m].width_hz();
      const double w_mhz = sc.channels[m].width_mhz;
      const int x = v.x[l][m], p = v.p[l][m], s = v.s[l][m], c = v.c[l][m];
      lp.AddRow({{p, 1.0}, {x, -sc.big_m}}, Sense::kLessEqual, 0.0, Key("bigm", l, m));
      lp.AddRow({{s, 1.0}, {p, -link.gain[m] / (sc.noise_density * w_hz)}},
                Sense::kEqual, 0.0, Key("snr", l, m));
      std::vector<std::pair<int, double>> cap{{c, -1.0}};
      for (int k = 0; k < n_sess; ++k) {
        if (v.f[l][m][k] >= 0) cap.emplace_back(v.f[l][m][k], 1.0);
      }
      lp.AddRow(std::move(cap), Sense::kLessEqual, 0.0, Key("cap", l, m));

      // ln(1+s) hull on c_ln = c ln2 / W.
      const double to_nats = std::numbers::ln2 / w_mhz;
      const HullSegments hull = BuildHull(0.0, lp.variable(s).upper);
      for (int seg = 0; seg < 4; ++seg) {
        const HullInequality& h = hull.segments[seg];
        std::vector<std::pair<int, double>> terms{{c, h.coef_c * to_nats}, {s, h.coef_s}};
        double rhs = h.rhs;
        if (!opt.fixed_hull) {
          if (h.rhs != 0.0) terms.emplace_back(x, -h.rhs);
          rhs = 0.0;
        }
        lp.AddRow(std::move(terms), h.sense, rhs, Key("hull", l, m) + std::to_string(seg));
      }
      capacity.push_back({x, s, c, w_mhz});
    }
  }

  // Flow balance.
  for (int k = 0; k < n_sess; ++k) {
    const Session& ses = sc.sessions[k];
    const double rate = ses.rate_bps / kMega;
    for (int i = 0; i < n_nodes; ++i) {
      std::vector<std::pair<int, double>> terms;
      if (i == ses.source) {
        for (const auto& [l, m] : inc.out[i]) {
          if (v.f[l][m][k] >= 0) terms.emplace_back(v.f[l][m][k], 1.0);
        }
        lp.AddRow(std::move(terms), Sense::kGreaterEqual, rate, Key("src", k, i));
      } else if (i == ses.dest) {
        for (const auto& [l, m] : inc.in[i]) {
          if (v.f[l][m][k] >= 0) terms.emplace_back(v.f[l][m][k], 1.0);
        }
        lp.AddRow(std::move(terms), Sense::kGreaterEqual, rate, Key("dst", k, i));
      } else {
        for (const auto& [l, m] : inc.in[i]) {
          if (v.f[l][m][k] >= 0) terms.emplace_back(v.f[l][m][k], 1.0);
        }
        for (const auto& [l, m] : inc.out[i]) {
          if (v.f[l][m][k] >= 0) terms.emplace_back(v.f[l][m][k], -1.0);
        }
        if (!terms.empty()) {
          lp.AddRow(std::move(terms), Sense::kEqual, 0.0, Key("cons", k, i));
        }
      }
    }
  }

  // Fixed power gates and spans per node side.
  double base = kInfinity, guard_edge = 0.0;
  for (const Channel& ch : sc.channels) {
    base = std::min(base, ch.lower_edge_mhz());
  }
  for (const Channel& ch : sc.channels) guard_edge = std::max(guard_edge, ch.upper_edge_mhz() - base);
  const std::vector<int> remapped = RemapChannelIndices(sc.channels);
  const int guard_index = remapped.empty() ? 0 : *std::max_element(remapped.begin(), remapped.end());

  auto side_rows = [&](int i, const std::vector<std::pair<int, int>>& lc, int gate_var,
                       double gate_coef, int q_var, const char* tag) {
    const std::vector<int> ms = DistinctChannels(lc);
    auto x_terms = [&](int m, double coef, std::vector<std::pair<int, double>>& out) {
      for (const auto& [l, mm] : lc) if (mm == m) out.emplace_back(v.x[l][m], coef);
    };
    for (int m : ms) {
      std::vector<std::pair<int, double>> terms{{gate_var, 1.0}};
      if (gate_coef != 0.0) x_terms(m, -gate_coef, terms);
      lp.AddRow(std::move(terms), Sense::kGreaterEqual, 0.0, Key(tag, i, m));
    }
    if (opt.spans == MilpOptions::SpanEncoding::kInterval) {
      std::vector<int> order = ms;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sc.channels[a].lower_edge_mhz() < sc.channels[b].lower_edge_mhz();
      });
      const int t = static_cast<int>(order.size());
      const std::string side = std::string(tag) + std::to_string(i);
      const int active = lp.AddVariable("on_" + side, 0.0, 1.0);
      std::vector<int> lo(t), hi(t);
      for (int j = 0; j < t; ++j) {
        lo[j] = lp.AddVariable("lo_" + side + "_" + std::to_string(order[j]), 0.0, 1.0);
        hi[j] = lp.AddVariable("hi_" + side + "_" + std::to_string(order[j]), 0.0, 1.0);
      }
      std::vector<std::pair<int, double>> lo_sum{{active, -1.0}}, hi_sum{{active, -1.0}};
      std::vector<std::pair<int, double>> span{{q_var, 1.0}};
      for (int j = 0; j < t; ++j) {
        lo_sum.emplace_back(lo[j], 1.0);
        hi_sum.emplace_back(hi[j], 1.0);
        span.emplace_back(lo[j], sc.channels[order[j]].lower_edge_mhz() - base);
        span.emplace_back(hi[j], -(sc.channels[order[j]].upper_edge_mhz() - base));
      }
      lp.AddRow(std::move(lo_sum), Sense::kEqual, 0.0, "lo_" + side);
      lp.AddRow(std::move(hi_sum), Sense::kEqual, 0.0, "hi_" + side);
      lp.AddRow(std::move(span), Sense::kGreaterEqual, 0.0, "span_" + side);
      // A used channel needs the lowest-channel weight at or below it, the
      // highest-channel weight at or above it, and the side switched on.
      for (int j = 0; j < t; ++j) {
        std::vector<std::pair<int, double>> below, above, on{{active, 1.0}};
        for (int jj = 0; jj <= j; ++jj) below.emplace_back(lo[jj], 1.0);
        for (int jj = j; jj < t; ++jj) above.emplace_back(hi[jj], 1.0);
        x_terms(order[j], -1.0, below);
        x_terms(order[j], -1.0, above);
        x_terms(order[j], -1.0, on);
        lp.AddRow(std::move(below), Sense::kGreaterEqual, 0.0, Key("below", i, order[j]));
        lp.AddRow(std::move(above), Sense::kGreaterEqual, 0.0, Key("above", i, order[j]));
        lp.AddRow(std::move(on), Sense::kGreaterEqual, 0.0, Key("on", i, order[j]));
      }
    }
    std::vector<SpanInequality> rows;
    if (opt.spans == MilpOptions::SpanEncoding::kIndex) {
      std::vector<int> idx;
      for (int m : ms) idx.push_back(remapped[m]);
      rows = LinearizeSpanConstraints(idx, guard_index, sc.channels[0].width_mhz);
    } else {
      std::vector<double> lo, hi;
      for (int m : ms) {
        lo.push_back(sc.channels[m].lower_edge_mhz() - base);
        hi.push_back(sc.channels[m].upper_edge_mhz() - base);
      }
      if (opt.spans == MilpOptions::SpanEncoding::kEdges) {
        rows = LinearizeSpanEdges(lo, hi, guard_edge);
      }
    }
    for (const SpanInequality& row : rows) {
      std::vector<std::pair<int, double>> terms{{q_var, 1.0}};
      for (const auto& [pos, coef] : row.x_terms) x_terms(ms[pos], coef, terms);
      lp.AddRow(std::move(terms), Sense::kGreaterEqual, row.rhs, Key("span", i, 0));
    }
    if (opt.strengthen) {
      std::vector<std::pair<int, double>> terms{{q_var, 1.0}};
      for (int m : ms) x_terms(m, -sc.channels[m].width_mhz, terms);
      lp.AddRow(std::move(terms), Sense::kGreaterEqual, 0.0, Key("width", i, 0));
    }
  };
  for (int i = 0; i < n_nodes; ++i) {
    if (v.q_t[i] >= 0) side_rows(i, inc.out[i], v.alpha1[i], radio.alpha1(), v.q_t[i], "a1");
    if (v.q_r[i] >= 0) side_rows(i, inc.in[i], v.beta1[i], radio.beta1(), v.q_r[i], "b1");
  }

  // P_tot >= sum of node powers.
  std::vector<std::pair<int, double>> total{{v.p_tot, 1.0}};
  for (int i = 0; i < n_nodes; ++i) {
    if (v.q_t[i] >= 0) {
      total.emplace_back(v.alpha1[i], -1.0);
      if (radio.alpha2() != 0.0) total.emplace_back(v.q_t[i], -2.0 * radio.alpha2() * kMega);
    }
    if (v.q_r[i] >= 0) {
      total.emplace_back(v.beta1[i], -1.0);
      if (radio.beta2() != 0.0) total.emplace_back(v.q_r[i], -2.0 * radio.beta2() * kMega);
    }
  }
  for (int l = 0; l < n_links; ++l) {
    for (int m = 0; m < n_ch; ++m) {
      if (v.p[l][m] >= 0) total.emplace_back(v.p[l][m], -radio.k_pa());
    }
  }
  lp.AddRow(std::move(total), Sense::kGreaterEqual, 0.0, "P_tot");

  if (!opt.fixed_hull) {
    const double tol = opt.separation_tolerance;
    model.separator = [capacity, tol](const std::vector<double>& pt) {
      std::vector<LpRow> cuts;
      for (const Capacity& cp : capacity) {
        const double xv = pt[cp.x];
        if (xv <= 1e-12) continue;
        const double to_nats = std::numbers::ln2 / cp.width_mhz;
        const double s0 = std::max(0.0, pt[cp.s] / xv);
        const double have = xv * std::log1p(s0);
        if (pt[cp.c] * to_nats - have <= tol * std::max(1.0, have)) continue;
        // c ln2/W <= ln(1+s0) x + (s - s0 x)/(1+s0), scaled by 1/(1+s0)'s inverse.
        const double a = 1.0 / (1.0 + s0);
        LpRow row;
        row.terms = {{cp.c, to_nats}, {cp.s, -a}, {cp.x, -(std::log1p(s0) - s0 * a)}};
        row.sense = Sense::kLessEqual;
        row.rhs = 0.0;
        cuts.push_back(std::move(row));
      }
      return cuts;
    };
  }
  model.rounder = [v](const std::vector<double>& pt) {
    std::vector<char> wide, single;
    for (std::size_t l = 0; l < v.x.size(); ++l) {
      double flow = 0.0;
      int best = -1;
      for (std::size_t m = 0; m < v.x[l].size(); ++m) {
        if (v.x[l][m] < 0) continue;
        for (int f : v.f[l][m]) {
          if (f >= 0) flow += pt[f];
        }
        if (best < 0 || pt[v.x[l][m]] > pt[v.x[l][best]]) best = static_cast<int>(m);
      }
      const bool active = flow > 1e-4;  // Mbps
      bool any = false;
      const std::size_t first = wide.size();
      for (std::size_t m = 0; m < v.x[l].size(); ++m) {
        if (v.x[l][m] < 0) continue;
        const bool on = active && pt[v.x[l][m]] >= 0.5;
        any = any || on;
        wide.push_back(on ? 1 : 0);
        single.push_back(active && static_cast<int>(m) == best ? 1 : 0);
      }
      if (active && !any && best >= 0) {
        std::size_t slot = first;
        for (int m = 0; m < best; ++m) slot += v.x[l][m] >= 0 ? 1 : 0;
        wide[slot] = 1;
      }
    }
    std::vector<std::vector<char>> proposals{wide};
    if (single != wide) proposals.push_back(single);
    return proposals;
  };
  return model;
}

int ExpectedRowCount(const Scenario& sc, const MilpModel& model, const MilpOptions& opt) {
  const Incidence inc = BuildIncidence(sc);
  int k_pairs = 0;
  for (int l = 0; l < sc.num_links(); ++l) k_pairs += static_cast<int>(sc.LinkChannels(l).size());
  int half_duplex = 0, gates = 0, spans = 0, sides = 0;
  for (int i = 0; i < sc.num_nodes(); ++i) {
    std::vector<std::pair<int, int>> both = inc.out[i];
    both.insert(both.end(), inc.in[i].begin(), inc.in[i].end());
    half_duplex += static_cast<int>(DistinctChannels(both).size());
    for (const auto* side : {&inc.out[i], &inc.in[i]}) {
      if (side->empty()) continue;
      const int t = static_cast<int>(DistinctChannels(*side).size());
      gates += t;
      spans += opt.spans == MilpOptions::SpanEncoding::kInterval ? 3 * t + 3 : t * t;
      ++sides;
    }
  }
  int flow = 0;
  for (const Session& ses : sc.sessions) {
    flow += 2;
    for (int i = 0; i < sc.num_nodes(); ++i) {
      if (i == ses.source || i == ses.dest) continue;
      bool any = false;
      for (const auto& [l, m] : inc.in[i]) any = any || !Excluded(sc.links[l], ses);
      for (const auto& [l, m] : inc.out[i]) any = any || !Excluded(sc.links[l], ses);
      flow += any ? 1 : 0;
    }
  }
  return half_duplex + model.interference_rows + 7 * k_pairs + flow + gates + spans +
         (opt.strengthen ? sides : 0) + 1;
}

// ---------------------------------------------------------------------------
// Allocation, repair and evaluation
// ---------------------------------------------------------------------------

Allocation Allocation::Zero(const Scenario& sc) {
  Allocation a;
  a.power.assign(sc.num_links(), std::vector<double>(sc.num_channels(), 0.0));
  a.flow.assign(sc.num_links(),
                std::vector<std::vector<double>>(sc.num_channels(),
                                                 std::vector<double>(sc.sessions.size(), 0.0)));
  return a;
}

double Allocation::LinkChannelFlow(int link, int channel) const {
  double sum = 0.0;
  for (double f : flow[link][channel]) sum += f;
  return sum;
}

double RepairPower(double flow_bps, double width_hz, double gain, double noise_density) {
  if (flow_bps <= 0.0) return 0.0;
  return noise_density * width_hz / gain * std::expm1(flow_bps / width_hz * std::numbers::ln2);
}

RepairResult RepairPowers(const Scenario& sc, const Schedule& schedule, const Allocation& flows) {
  RepairResult out;
  out.power.assign(sc.num_links(), std::vector<double>(sc.num_channels(), 0.0));
  for (int l = 0; l < sc.num_links(); ++l) {
    for (int m = 0; m < sc.num_channels(); ++m) {
      const double f = flows.LinkChannelFlow(l, m);
      if (!schedule.at(l, m)) {
        if (f > 0.0) out.failures.push_back("flow on unscheduled " + Key("link", l, m));
        continue;
      }
      const double p = RepairPower(f, sc.channels[m].width_hz(), sc.links[l].gain[m], sc.noise_density);
      out.power[l][m] = p;
      const double cap = std::min(sc.max_tx_power, sc.big_m);
      if (p > cap * (1.0 + kRepairTolerance)) {
        out.failures.push_back("repair-failure: " + Key("p", l, m) + " exceeds the power cap");
      }
    }
  }
  for (int a = 0; a < sc.num_links(); ++a) {
    const Link& ij = sc.links[a];
    for (int b = 0; b < sc.num_links(); ++b) {
      const Link& kh = sc.links[b];
      if (a == b || kh.tx == ij.tx || kh.tx == ij.rx || kh.rx == ij.tx || kh.rx == ij.rx) continue;
      for (int m = 0; m < sc.num_channels(); ++m) {
        if (!schedule.at(a, m) || !schedule.at(b, m)) continue;
        const double g = sc.CrossGain(kh.tx, ij.rx, m);
        if (out.power[b][m] * g > sc.interference_threshold * (1.0 + kRepairTolerance)) {
          out.failures.push_back("repair-failure: " + Key("p", b, m) + " interferes with link " +
                                 std::to_string(a));
        }
      }
    }
  }
  return out;
}

PowerBreakdown EvaluatePower(const Scenario& sc, const Schedule& schedule,
                             const std::vector<std::vector<double>>& power) {
  const SpanResult spans = NodeSpans(schedule, sc);
  PowerBreakdown total;
  for (int i = 0; i < sc.num_nodes(); ++i) {
    std::vector<double> tx;
    for (int l = 0; l < sc.num_links(); ++l) {
      if (sc.links[l].tx != i) continue;
      for (int m = 0; m < sc.num_channels(); ++m) {
        if (schedule.at(l, m)) tx.push_back(power[l][m]);
      }
    }
    total += NodePower(sc.radio, spans.q_t[i], spans.q_r[i], spans.q_t[i] > 0.0,
                       spans.q_r[i] > 0.0, tx);
  }
  return total;
}

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kLimitWithIncumbent: return "limit-with-incumbent";
    case SolveStatus::kLimitNoIncumbent: return "limit-no-incumbent";
  }
  return "unknown";
}

void Finalize(const Scenario& sc, Solution& sol) {
  sol.spans = NodeSpans(sol.schedule, sc);
  sol.breakdown = EvaluatePower(sc, sol.schedule, sol.allocation.power);
}

Solution DecodeSolution(const Scenario& sc, const VariableMap& vars, const std::vector<double>& x) {
  Solution sol;
  sol.schedule = Schedule(sc.num_links(), sc.num_channels());
  sol.allocation = Allocation::Zero(sc);
  for (int l = 0; l < sc.num_links(); ++l) {
    for (int m = 0; m < sc.num_channels(); ++m) {
      if (vars.x[l][m] < 0) continue;
      const bool on = x[vars.x[l][m]] > 0.5;
      sol.schedule.set(l, m, on);
      for (std::size_t k = 0; k < sc.sessions.size(); ++k) {
        const int j = vars.f[l][m][k];
        if (j >= 0 && on) sol.allocation.flow[l][m][k] = std::max(0.0, x[j]) * kMega;
      }
    }
  }
  RepairResult repair = RepairPowers(sc, sol.schedule, sol.allocation);
  sol.allocation.power = std::move(repair.power);
  sol.warnings = std::move(repair.failures);
  sol.status = sol.warnings.empty() ? SolveStatus::kSolved : SolveStatus::kInfeasible;
  Finalize(sc, sol);
  return sol;
}

namespace {

std::optional<std::pair<double, std::vector<double>>> FixedScheduleIncumbent(
    const MilpModel& model, const Schedule& schedule) {
  LinearProgram lp = model.lp;
  const VariableMap& v = model.vars;
  for (int l = 0; l < static_cast<int>(v.x.size()); ++l) {
    for (int m = 0; m < static_cast<int>(v.x[l].size()); ++m) {
      const bool on = schedule.at(l, m);
      if (v.x[l][m] < 0) {
        if (on) return std::nullopt;
        continue;
      }
      lp.variable(v.x[l][m]).lower = lp.variable(v.x[l][m]).upper = on ? 1.0 : 0.0;
    }
  }
  BnBOptions options;
  options.separate = model.separator;
  const BnBResult r = BranchAndBound(lp, v.binaries, options);
  if (!r.has_incumbent()) return std::nullopt;
  return std::make_pair(r.incumbent, r.x);
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::optional<Solution> SolveFixedSchedule(const Scenario& sc, const Schedule& schedule,
                                           const MilpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const MilpModel model = BuildMilp(sc, options);
  const auto point = FixedScheduleIncumbent(model, schedule);
  if (!point) return std::nullopt;
  Solution sol = DecodeSolution(sc, model.vars, point->second);
  sol.runtime_s = Seconds(start);
  return sol;
}

Solution SolveBnb(const Scenario& sc, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const MilpModel model = BuildMilp(sc, options.milp);
  BnBOptions bnb_options;
  bnb_options.limits = options.limits;
  bnb_options.separate = model.separator;
  bnb_options.round = model.rounder;
  if (options.warm_start) {
    bnb_options.initial_incumbent = FixedScheduleIncumbent(model, *options.warm_start);
  }
  const BnBResult result = BranchAndBound(model.lp, model.vars.binaries, bnb_options);

  Solution sol;
  if (result.has_incumbent()) {
    sol = DecodeSolution(sc, model.vars, result.x);
    if (sol.status == SolveStatus::kSolved &&
        (result.status == BnBStatus::kNodeLimit || result.status == BnBStatus::kTimeLimit)) {
      sol.status = SolveStatus::kLimitWithIncumbent;
    }
  } else {
    sol.schedule = Schedule(sc.num_links(), sc.num_channels());
    sol.allocation = Allocation::Zero(sc);
    Finalize(sc, sol);
    sol.status = result.status == BnBStatus::kInfeasible ? SolveStatus::kInfeasible
                                                         : SolveStatus::kLimitNoIncumbent;
  }
  sol.warnings.insert(sol.warnings.begin(), model.warnings.begin(), model.warnings.end());
  sol.method = "bnb";
  sol.bnb = result;
  sol.runtime_s = Seconds(start);
  return sol;
}

}  // namespace ncospan
