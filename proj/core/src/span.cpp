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

#include "ncospan/span.hpp"

#include <algorithm>
#include <cmath>

#include "ncospan/error.hpp"

namespace ncospan {

Schedule::Schedule(int num_links, int num_channels)
    : num_links_(num_links),
      num_channels_(num_channels),
      bits_(static_cast<std::size_t>(num_links) * num_channels, 0) {}

std::vector<int> Schedule::Channels(int link) const {
  std::vector<int> out;
  for (int m = 0; m < num_channels_; ++m) {
    if (at(link, m)) out.push_back(m);
  }
  return out;
}

int Schedule::Count(int link) const {
  int n = 0;
  for (int m = 0; m < num_channels_; ++m) n += at(link, m) ? 1 : 0;
  return n;
}

int Schedule::TotalAssignments() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

NodeChannelUse DeriveNodeChannels(const Scenario& scenario,
                                  const Schedule& schedule) {
  NodeChannelUse use;
  use.tx.resize(scenario.num_nodes());
  use.rx.resize(scenario.num_nodes());
  for (int l = 0; l < scenario.num_links(); ++l) {
    const Link& link = scenario.links[l];
    for (int m : schedule.Channels(l)) {
      use.tx[link.tx].push_back(m);
      use.rx[link.rx].push_back(m);
    }
  }
  for (auto* sets : {&use.tx, &use.rx}) {
    for (auto& v : *sets) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  return use;
}

std::vector<std::string> HalfDuplexViolations(const Scenario& scenario,
                                              const Schedule& schedule) {
  std::vector<std::string> out;
  const int n = scenario.num_nodes();
  const int mc = scenario.num_channels();
  std::vector<int> touches(static_cast<std::size_t>(n) * mc, 0);
  for (int l = 0; l < scenario.num_links(); ++l) {
    for (int m : schedule.Channels(l)) {
      ++touches[scenario.links[l].tx * mc + m];
      ++touches[scenario.links[l].rx * mc + m];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < mc; ++m) {
      if (touches[i * mc + m] > 1) {
        out.push_back("node " + std::to_string(scenario.nodes[i].id) +
                      " uses channel " +
                      std::to_string(scenario.channels[m].id) + " on " +
                      std::to_string(touches[i * mc + m]) + " links");
      }
    }
  }
  return out;
}

double SpanFrequency(std::span<const Channel> used) {
  if (used.empty()) return 0.0;
  double lo = used.front().lower_edge_mhz();
  double hi = used.front().upper_edge_mhz();
  for (const Channel& c : used) {
    lo = std::min(lo, c.lower_edge_mhz());
    hi = std::max(hi, c.upper_edge_mhz());
  }
  return (hi - lo) * 1e6;
}

double SpanFrequency(const std::vector<Channel>& channels,
                     std::span<const int> used) {
  std::vector<Channel> picked;
  picked.reserve(used.size());
  for (int m : used) picked.push_back(channels.at(m));
  return SpanFrequency(picked);
}

double SpanIndex(std::span<const int> used_indices, int guard,
                 double width_hz) {
  if (used_indices.empty()) return 0.0;
  // max(m x) - min(m x + G (1 - x)) + 1 over the active set only.
  int hi = 0;
  int lo = guard;
  for (int m : used_indices) {
    hi = std::max(hi, m);
    lo = std::min(lo, m);
  }
  return width_hz * (hi - lo + 1);
}

SpanResult NodeSpans(const Schedule& schedule, const Scenario& scenario) {
  const NodeChannelUse use = DeriveNodeChannels(scenario, schedule);
  SpanResult out;
  const int n = scenario.num_nodes();
  out.q_t.resize(n);
  out.q_r.resize(n);
  const double limit = scenario.q_max_hz * (1.0 + 1e-9);
  for (int i = 0; i < n; ++i) {
    out.q_t[i] = SpanFrequency(scenario.channels, use.tx[i]);
    out.q_r[i] = SpanFrequency(scenario.channels, use.rx[i]);
    for (int k = 0; k < 2; ++k) {
      const double q = k == 0 ? out.q_t[i] : out.q_r[i];
      if (q > limit) {
        out.bundle_violations.push_back(
            "node " + std::to_string(scenario.nodes[i].id) +
            (k == 0 ? " tx" : " rx") + " span " + std::to_string(q / 1e6) +
            " MHz exceeds q_max");
      }
    }
  }
  return out;
}

}  // namespace ncospan
