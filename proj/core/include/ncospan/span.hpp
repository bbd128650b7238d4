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

#ifndef NCOSPAN_SPAN_HPP_
#define NCOSPAN_SPAN_HPP_

#include <span>
#include <string>
#include <vector>

#include "ncospan/scenario.hpp"

namespace ncospan {

// Binary link/channel assignment x[link][channel].
class Schedule {
 public:
  Schedule() = default;
  Schedule(int num_links, int num_channels);

  bool at(int link, int channel) const {
    return bits_[Index(link, channel)] != 0;
  }
  void set(int link, int channel, bool on = true) {
    bits_[Index(link, channel)] = on ? 1 : 0;
  }
  int num_links() const { return num_links_; }
  int num_channels() const { return num_channels_; }

  // Assigned channel positions of \p link, ascending.
  std::vector<int> Channels(int link) const;
  int Count(int link) const;
  int TotalAssignments() const;

  bool operator==(const Schedule&) const = default;

 private:
  std::size_t Index(int link, int channel) const {
    return static_cast<std::size_t>(link) * num_channels_ + channel;
  }
  int num_links_ = 0;
  int num_channels_ = 0;
  std::vector<char> bits_;
};

// Per-node derived channel sets: x_t[i][m] = max_j x[i][j][m] and
// x_r[i][m] = max_k x[k][i][m], as ascending channel positions.
struct NodeChannelUse {
  std::vector<std::vector<int>> tx;
  std::vector<std::vector<int>> rx;
};
NodeChannelUse DeriveNodeChannels(const Scenario& scenario,
                                  const Schedule& schedule);

// Half-duplex check: a node may be endpoint of at most one scheduled link per
// channel. Returns human-readable violations.
std::vector<std::string> HalfDuplexViolations(const Scenario& scenario,
                                              const Schedule& schedule);

// Gap between the outer edges of the used channels, in Hz. Empty set -> 0.
double SpanFrequency(std::span<const Channel> used);
// Same, with channels given as positions into \p channels.
double SpanFrequency(const std::vector<Channel>& channels,
                     std::span<const int> used);

// Index-form span W * (max - min + 1) using the guarded minimum
// min(m x_m + guard (1 - x_m)); \p guard must be >= every index. Empty -> 0.
double SpanIndex(std::span<const int> used_indices, int guard, double width_hz);

struct SpanResult {
  std::vector<double> q_t;  // Hz per node
  std::vector<double> q_r;
  // Nodes whose tx or rx span exceeds q_max.
  std::vector<std::string> bundle_violations;

  bool bundle_feasible() const { return bundle_violations.empty(); }
};

// Frequency spans of every node's transmit and receive path.
SpanResult NodeSpans(const Schedule& schedule, const Scenario& scenario);

}  // namespace ncospan

#endif  // NCOSPAN_SPAN_HPP_
