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

#include "cli/fixtures.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "ncospan/error.hpp"

namespace ncospan::cli {
namespace {

constexpr double kNoiseDensity = 4.0e-21;

Scenario SingleLink(std::uint64_t seed) {
  Scenario s;
  s.channels = ContiguousChannelPlan(20, 3.0, 471.5);
  const int m = s.num_channels();
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  s.nodes = {{1, 0.0, 0.0, all}, {2, 400.0, 0.0, all}};

  // Even positions are good, odd ones 10 dB worse; up to 1 dB of jitter
  // keeps the ordering strict.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  Link link{0, 1, std::vector<double>(m)};
  for (int c = 0; c < m; ++c) {
    const double base_db = (c % 2 == 0) ? -114.0 : -124.0;
    link.gain[c] = std::pow(10.0, (base_db + jitter(rng)) / 10.0);
  }
  s.links = {link};
  s.sessions = {{0, 1, 18.0e6}};
  s.noise_density = kNoiseDensity;
  s.interference_threshold = 0.1 * kNoiseDensity * s.channels[0].width_hz();
  s.max_tx_power = 4.0;
  s.big_m = 4.0;
  s.q_max_hz = (s.channels.back().upper_edge_mhz() -
                s.channels.front().lower_edge_mhz()) * 1e6;
  s.radio = RadioPreset("high-slope");
  s.seed = seed;
  s.Validate();
  return s;
}

Scenario Network12(std::uint64_t seed) {
  GeneratorParams p;
  p.node_count = 12;
  // Three sources on the left, relays in the middle column, sinks on the
  // right, plus four bystanders. Grid cells are 1 km.
  constexpr int kCells[12][2] = {{0, 2}, {0, 1}, {0, 0}, {1, 2}, {1, 3}, {2, 3},
                                 {1, 0}, {1, 1}, {3, 1}, {2, 0}, {2, 1}, {2, 2}};
  for (const auto& c : kCells) p.positions.emplace_back(1000.0 * c[0], 1000.0 * c[1]);
  p.area_width_m = 3000.0;
  p.area_height_m = 3000.0;
  p.path_loss_exponent = 3.0;
  p.shadowing_db = 12.0;
  p.reference_gain_db = -30.0;
  p.link_range_m = 1200.0;
  p.channels = WichitaChannelPlan();
  p.sessions = {{1, 12, 10.0e6}, {2, 11, 10.0e6}, {3, 10, 10.0e6}};
  p.noise_density = kNoiseDensity;
  p.radio = RadioPreset("high-slope");
  p.seed = seed;
  return GenerateScenario(p);
}

Scenario Chain3(std::uint64_t seed) {
  GeneratorParams p;
  p.node_count = 3;
  p.positions = {{0.0, 0.0}, {500.0, 0.0}, {1000.0, 0.0}};
  p.reference_gain_db = -30.0;
  p.link_range_m = 600.0;
  p.channels = ContiguousChannelPlan(4, 6.0, 473.0);
  p.sessions = {{1, 3, 2.0e6}};
  p.noise_density = kNoiseDensity;
  p.radio = RadioPreset("high-slope");
  p.seed = seed;
  return GenerateScenario(p);
}

}  // namespace

Scenario FixturePreset(const std::string& name, std::uint64_t seed) {
  if (name == "single-link") return SingleLink(seed);
  if (name == "network12") return Network12(seed);
  if (name == "chain3") return Chain3(seed);
  throw ValidationError("unknown fixture preset '" + name + "'");
}

std::vector<std::string> FixturePresetNames() {
  return {"single-link", "network12", "chain3"};
}

std::uint64_t DefaultFixtureSeed(const std::string& name) {
  if (name == "chain3") return 7;
  return 1;
}

}  // namespace ncospan::cli
