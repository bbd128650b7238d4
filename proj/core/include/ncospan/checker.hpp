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

#ifndef NCOSPAN_CHECKER_HPP_
#define NCOSPAN_CHECKER_HPP_

#include <string>
#include <vector>

#include "ncospan/milp.hpp"
#include "ncospan/scenario.hpp"

namespace ncospan {

struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Re-verifies half-duplex, interference, power caps, flow demands and
// conservation, link capacity, the bundle limit and the reported power
// total from scratch. \p tolerance is relative.
CheckReport CheckSolution(const Scenario& scenario, const Solution& solution,
                          double tolerance = 1e-6);

}  // namespace ncospan

#endif  // NCOSPAN_CHECKER_HPP_
