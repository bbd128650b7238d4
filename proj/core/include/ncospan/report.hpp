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

#ifndef NCOSPAN_REPORT_HPP_
#define NCOSPAN_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ncospan/checker.hpp"
#include "ncospan/milp.hpp"
#include "ncospan/scenario.hpp"

namespace ncospan {

struct SpanRow {
  int node_id = 0;
  std::string mode;  // "tx" or "rx"
  std::vector<int> channel_ids;
  double span_mhz = 0.0;
};

// Active node sides only, ordered by node then tx before rx.
std::vector<SpanRow> SpanTable(const Scenario& scenario, const Solution& solution);

struct RouteHop {
  int from_id = 0;
  int to_id = 0;
  double rate_bps = 0.0;
};

// Per-session links with positive flow, in link order.
std::vector<std::vector<RouteHop>> SessionRoutes(const Scenario& scenario,
                                                 const Solution& solution);

struct ReportContext {
  std::uint64_t seed = 0;
  bool include_runtime = true;
};

std::string ReportJson(const Scenario& scenario, const Solution& solution,
                       const CheckReport& check, const ReportContext& context);

// Stable comparison columns, see README.
std::string CsvHeader();
std::string CsvRow(const Scenario& scenario, const Solution& solution,
                   const std::string& error = {});
// Row for a method that failed before producing a solution.
std::string CsvErrorRow(const std::string& method, const std::string& error);

// Fixed-width text rendering of the span table.
std::string FormatSpanTable(const std::vector<SpanRow>& rows);

}  // namespace ncospan

#endif  // NCOSPAN_REPORT_HPP_
