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

#include "ncospan/checker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncospan {

namespace {

// Absolute slack on quantities that are exactly zero in theory.
constexpr double kPowerFloor = 1e-15;  // W
constexpr double kFlowFloor = 1e-6;    // bit/s

std::string Where(const Scenario& sc, int l, int m) {
  std::ostringstream os;
  os << "link " << sc.nodes[sc.links[l].tx].id << "->" << sc.nodes[sc.links[l].rx].id
     << " channel " << sc.channels[m].id;
  return os.str();
}

}  // namespace

CheckReport CheckSolution(const Scenario& sc, const Solution& sol, double tol) {
  CheckReport rep;
  auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
  const int n_links = sc.num_links();
  const int n_ch = sc.num_channels();
  const int n_nodes = sc.num_nodes();
  const Schedule& x = sol.schedule;
  const auto& p = sol.allocation.power;
  const auto& f = sol.allocation.flow;

  if (x.num_links() != n_links || x.num_channels() != n_ch ||
      static_cast<int>(p.size()) != n_links || static_cast<int>(f.size()) != n_links) {
    fail("solution dimensions do not match the scenario");
    return rep;
  }

  auto available = [&](int l, int m) {
    const auto& a = sc.nodes[sc.links[l].tx].channels;
    const auto& b = sc.nodes[sc.links[l].rx].channels;
    return std::find(a.begin(), a.end(), m) != a.end() &&
           std::find(b.begin(), b.end(), m) != b.end();
  };

  // Power caps, big-M coupling and capacity per link-channel.
  for (int l = 0; l < n_links; ++l) {
    for (int m = 0; m < n_ch; ++m) {
      const double pw = p[l][m];
      double flow = 0.0;
      for (double v : f[l][m]) {
        if (v < -kFlowFloor) fail("negative flow on " + Where(sc, l, m));
        flow += v;
      }
      if (x.at(l, m) && !available(l, m)) fail("scheduled on unavailable " + Where(sc, l, m));
      if (pw < -kPowerFloor) fail("negative power on " + Where(sc, l, m));
      if (!x.at(l, m)) {
        if (pw > kPowerFloor) fail("power on unscheduled " + Where(sc, l, m));
        if (flow > kFlowFloor) fail("flow on unscheduled " + Where(sc, l, m));
        continue;
      }
      const double cap = std::min(sc.max_tx_power, sc.big_m);
      if (pw > cap * (1.0 + tol)) fail("power above cap on " + Where(sc, l, m));
      const double w = sc.channels[m].width_mhz * 1e6;
      const double snr = sc.links[l].gain[m] * pw / (sc.noise_density * w);
      const double capacity = w * std::log2(1.0 + snr);
      if (flow > capacity * (1.0 + tol) + kFlowFloor) {
        fail("flow exceeds capacity on " + Where(sc, l, m));
      }
    }
  }

  // Half-duplex.
  for (int i = 0; i < n_nodes; ++i) {
    for (int m = 0; m < n_ch; ++m) {
      int touches = 0;
      for (int l = 0; l < n_links; ++l) {
        if (x.at(l, m) && (sc.links[l].tx == i || sc.links[l].rx == i)) ++touches;
      }
      if (touches > 1) {
        fail("half-duplex: node " + std::to_string(sc.nodes[i].id) + " channel " +
             std::to_string(sc.channels[m].id));
      }
    }
  }

  // Interference at every other co-channel receiver.
  for (int a = 0; a < n_links; ++a) {
    for (int b = 0; b < n_links; ++b) {
      if (a == b) continue;
      const Link& ij = sc.links[a];
      const Link& kh = sc.links[b];
      if (kh.tx == ij.tx || kh.tx == ij.rx || kh.rx == ij.tx || kh.rx == ij.rx) continue;
      for (int m = 0; m < n_ch; ++m) {
        if (!x.at(a, m) || !x.at(b, m)) continue;
        double g = 0.0;
        for (const Link& k : sc.links) {
          if (k.tx == kh.tx && k.rx == ij.rx) g = k.gain[m];
        }
        if (p[b][m] * g > sc.interference_threshold * (1.0 + tol) + kPowerFloor) {
          fail("interference from " + Where(sc, b, m) + " at node " +
               std::to_string(sc.nodes[ij.rx].id));
        }
      }
    }
  }

  // Demands and conservation.
  for (std::size_t k = 0; k < sc.sessions.size(); ++k) {
    const Session& ses = sc.sessions[k];
    std::vector<double> in(n_nodes, 0.0), out(n_nodes, 0.0);
    for (int l = 0; l < n_links; ++l) {
      for (int m = 0; m < n_ch; ++m) {
        const double v = f[l][m].size() > k ? f[l][m][k] : 0.0;
        if ((sc.links[l].rx == ses.source || sc.links[l].tx == ses.dest) && v > kFlowFloor) {
          fail("session " + std::to_string(k) + " flows back through its endpoints");
        }
        out[sc.links[l].tx] += v;
        in[sc.links[l].rx] += v;
      }
    }
    const double r = ses.rate_bps;
    if (out[ses.source] < r * (1.0 - tol)) fail("session " + std::to_string(k) + " source demand unmet");
    if (in[ses.dest] < r * (1.0 - tol)) fail("session " + std::to_string(k) + " destination demand unmet");
    for (int i = 0; i < n_nodes; ++i) {
      if (i == ses.source || i == ses.dest) continue;
      if (std::abs(in[i] - out[i]) > r * tol + kFlowFloor) {
        fail("session " + std::to_string(k) + " not conserved at node " +
             std::to_string(sc.nodes[i].id));
      }
    }
  }

  // Bundle limit and power total.
  double total = 0.0;
  const RadioProfile& rp = sc.radio;
  for (int i = 0; i < n_nodes; ++i) {
    double tlo = INFINITY, thi = -INFINITY, rlo = INFINITY, rhi = -INFINITY;
    for (int l = 0; l < n_links; ++l) {
      for (int m = 0; m < n_ch; ++m) {
        if (!x.at(l, m)) continue;
        const double lo = sc.channels[m].center_mhz - sc.channels[m].width_mhz / 2;
        const double hi = sc.channels[m].center_mhz + sc.channels[m].width_mhz / 2;
        if (sc.links[l].tx == i) {
          tlo = std::min(tlo, lo);
          thi = std::max(thi, hi);
          total += rp.k_pa() * p[l][m];
        }
        if (sc.links[l].rx == i) {
          rlo = std::min(rlo, lo);
          rhi = std::max(rhi, hi);
        }
      }
    }
    const double qt = thi > tlo ? (thi - tlo) * 1e6 : 0.0;
    const double qr = rhi > rlo ? (rhi - rlo) * 1e6 : 0.0;
    if (qt > sc.q_max_hz * (1.0 + tol) || qr > sc.q_max_hz * (1.0 + tol)) {
      fail("bundle: node " + std::to_string(sc.nodes[i].id) + " span exceeds q_max");
    }
    if (qt > 0.0) total += rp.dac_intercept + rp.tx_fixed + rp.dac_slope * 2.0 * qt;
    if (qr > 0.0) total += rp.adc_intercept + rp.rx_fixed + rp.adc_slope * 2.0 * qr;
  }
  if (std::abs(total - sol.breakdown.total) > tol * std::max(1.0, std::abs(total))) {
    fail("reported total power does not match the recomputed total");
  }
  return rep;
}

}  // namespace ncospan
