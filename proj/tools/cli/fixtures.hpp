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

#ifndef NCOSPAN_CLI_FIXTURES_HPP_
#define NCOSPAN_CLI_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ncospan/scenario.hpp"

namespace ncospan::cli {

// Named, seed-reproducible scenarios shipped under data/.
//   single-link  2 nodes, 20 x 3 MHz channels, 18 Mbps, alternating
//                good/bad channel gains
//   network12    4 x 3 grid at 1 km, Wichita plan, sessions 1->12, 2->11,
//                3->10 at 10 Mbps
//   chain3       3-node chain, 4 x 6 MHz channels, one 2 Mbps session
Scenario FixturePreset(const std::string& name, std::uint64_t seed);
std::vector<std::string> FixturePresetNames();
std::uint64_t DefaultFixtureSeed(const std::string& name);

}  // namespace ncospan::cli

#endif  // NCOSPAN_CLI_FIXTURES_HPP_
