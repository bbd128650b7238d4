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

#ifndef NCOSPAN_SCENARIO_HPP_
#define NCOSPAN_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncospan/power_model.hpp"

namespace ncospan {

struct Channel {
  int id = 0;               // external label, e.g. a TV channel number
  double center_mhz = 0.0;
  double width_mhz = 0.0;

  double lower_edge_mhz() const { return center_mhz - width_mhz / 2.0; }
  double upper_edge_mhz() const { return center_mhz + width_mhz / 2.0; }
  double width_hz() const { return width_mhz * 1e6; }

  bool operator==(const Channel&) const = default;
};

struct Node {
  int id = 0;
  double x = 0.0;  // meters
  double y = 0.0;
  // Positions into Scenario::channels, ascending.
  std::vector<int> channels;

  bool operator==(const Node&) const = default;
};

struct Link {
  int tx = 0;  // node position
  int rx = 0;  // node position
  // Linear power gain per channel position. Zero outside the common channel
  // set of the endpoints.
  std::vector<double> gain;

  bool operator==(const Link&) const = default;
};

struct Session {
  int source = 0;  // node position
  int dest = 0;    // node position
  double rate_bps = 0.0;

  bool operator==(const Session&) const = default;
};

struct Scenario {
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<Channel> channels;
  std::vector<Session> sessions;
  double noise_density = 0.0;           // N0, W/Hz
  double interference_threshold = 0.0;  // P_I, W
  double max_tx_power = 0.0;            // P_max, W
  double big_m = 0.0;                   // A, W
  double q_max_hz = 0.0;
  RadioProfile radio;
  std::uint64_t seed = 1;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_links() const { return static_cast<int>(links.size()); }
  int num_channels() const { return static_cast<int>(channels.size()); }

  // Channel positions usable on link l: the intersection of the endpoints'
  // available sets.
  std::vector<int> LinkChannels(int link) const;
  bool LinkHasChannel(int link, int channel) const;
  // Link position for (tx, rx), if that link exists.
  std::optional<int> FindLink(int tx, int rx) const;
  // Gain from node \p from to node \p to on channel \p channel; zero when the
  // pair has no link (out of range).
  double CrossGain(int from, int to, int channel) const;
  int NodeIndex(int id) const;  // throws ValidationError on unknown id
  int ChannelIndex(int id) const;

  // Throws ValidationError naming the first violated invariant.
  void Validate() const;
  // All violated invariants, empty when clean.
  std::vector<std::string> Violations() const;

  bool operator==(const Scenario&) const = default;
};

// Scenario file I/O. The format is a JSON document; see README.md for the
// field list. Unknown keys are rejected.
Scenario ParseScenario(const std::string& text);
Scenario LoadScenario(const std::filesystem::path& path);
std::string SerializeScenario(const Scenario& scenario);
void SaveScenario(const Scenario& scenario, const std::filesystem::path& path);

// Same as ParseScenario but skips invariant validation; used by the validate
// command so it can list every violation.
Scenario ParseScenarioUnchecked(const std::string& text);

// Integer model index per channel: floor(center / width). Used only by the
// MILP span encoding.
std::vector<int> RemapChannelIndices(const std::vector<Channel>& channels);

// TV channels available to fixed devices in Wichita, Kansas (6 MHz each).
std::vector<Channel> WichitaChannelPlan();
// \p count contiguous channels of \p width_mhz starting at \p first_center_mhz.
std::vector<Channel> ContiguousChannelPlan(int count, double width_mhz,
                                           double first_center_mhz);

struct SessionSpec {
  int source_id = 0;
  int dest_id = 0;
  double rate_bps = 0.0;
};

struct GeneratorParams {
  int node_count = 2;
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  double path_loss_exponent = 3.0;
  double shadowing_db = 12.0;       // peak-to-peak, uniform +-shadowing/2
  double reference_gain_db = 0.0;   // gain at 1 m
  // Pairs farther apart get no link; zero means every pair is linked.
  double link_range_m = 0.0;
  std::vector<Channel> channels;
  std::vector<SessionSpec> sessions;
  // Explicit positions (meters) override random placement when non-empty.
  std::vector<std::pair<double, double>> positions;
  double noise_density = 4.0e-21;
  // Zero selects 0.1 * N0 * W_min.
  double interference_threshold = 0.0;
  double max_tx_power = 4.0;
  double big_m = 4.0;
  // Zero selects the full band edge-to-edge span.
  double q_max_hz = 0.0;
  RadioProfile radio = RadioPreset("high-slope");
  std::uint64_t seed = 1;
};

// Deterministic scenario generator: uniform random placement, gains
// g = g0 * d^-n * 10^(X/10) with X ~ U[-shadowing/2, +shadowing/2] drawn
// independently per directed link and channel. Throws ValidationError on
// coincident node positions.
Scenario GenerateScenario(const GeneratorParams& params);

}  // namespace ncospan

#endif  // NCOSPAN_SCENARIO_HPP_
