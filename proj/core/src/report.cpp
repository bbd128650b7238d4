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

#include "ncospan/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ncospan {

namespace {

bool HasSchedule(const Scenario& sc, const Solution& sol) {
  return sol.schedule.num_links() == sc.num_links() &&
         sol.schedule.num_channels() == sc.num_channels() &&
         static_cast<int>(sol.allocation.power.size()) == sc.num_links() &&
         static_cast<int>(sol.allocation.flow.size()) == sc.num_links();
}

// Nine significant digits keeps reports stable against solver round-off.
double Round9(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string Csv(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<SpanRow> SpanTable(const Scenario& sc, const Solution& sol) {
  if (!HasSchedule(sc, sol)) return {};
  const NodeChannelUse use = DeriveNodeChannels(sc, sol.schedule);
  std::vector<SpanRow> rows;
  for (int i = 0; i < sc.num_nodes(); ++i) {
    for (int side = 0; side < 2; ++side) {
      const std::vector<int>& ms = side == 0 ? use.tx[i] : use.rx[i];
      if (ms.empty()) continue;
      SpanRow row;
      row.node_id = sc.nodes[i].id;
      row.mode = side == 0 ? "tx" : "rx";
      for (int m : ms) row.channel_ids.push_back(sc.channels[m].id);
      row.span_mhz = SpanFrequency(sc.channels, ms) / 1e6;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::vector<RouteHop>> SessionRoutes(const Scenario& sc, const Solution& sol) {
  std::vector<std::vector<RouteHop>> routes(sc.sessions.size());
  if (sol.allocation.flow.empty()) return routes;
  for (std::size_t k = 0; k < sc.sessions.size(); ++k) {
    for (int l = 0; l < sc.num_links(); ++l) {
      double rate = 0.0;
      for (int m = 0; m < sc.num_channels(); ++m) rate += sol.allocation.flow[l][m][k];
      if (rate <= 1e-3) continue;
      routes[k].push_back({sc.nodes[sc.links[l].tx].id, sc.nodes[sc.links[l].rx].id, rate});
    }
  }
  return routes;
}

std::string ReportJson(const Scenario& sc, const Solution& sol, const CheckReport& check,
                       const ReportContext& ctx) {
  using nlohmann::json;
  json j;
  j["method"] = sol.method;
  j["status"] = ToString(sol.status);
  j["seed"] = ctx.seed;
  j["objective_w"] = Round9(sol.breakdown.total);
  j["breakdown"] = {{"tx_rf_w", Round9(sol.breakdown.tx_rf)},
                    {"tx_circuit_w", Round9(sol.breakdown.tx_circuit)},
                    {"rx_circuit_w", Round9(sol.breakdown.rx_circuit)},
                    {"total_w", Round9(sol.breakdown.total)}};
  if (sol.bnb) {
    const BnBResult& b = *sol.bnb;
    j["bnb"] = {{"status", ToString(b.status)},
                {"incumbent_w", std::isfinite(b.incumbent) ? json(Round9(b.incumbent)) : json()},
                {"lower_bound_w", std::isfinite(b.lower_bound) ? json(Round9(b.lower_bound)) : json()},
                {"gap", std::isfinite(b.gap) ? json(Round9(b.gap)) : json()},
                {"nodes", b.nodes},
                {"lp_iterations", b.lp_iterations},
                {"cuts", b.cuts},
                {"heuristic_incumbents", b.heuristic_incumbents}};
  }
  json spans = json::array();
  for (const SpanRow& r : SpanTable(sc, sol)) {
    spans.push_back({{"node", r.node_id}, {"mode", r.mode}, {"channels", r.channel_ids},
                     {"span_mhz", Round9(r.span_mhz)}});
  }
  j["spans"] = spans;
  json links = json::array();
  for (int l = 0; l < sc.num_links() && HasSchedule(sc, sol); ++l) {
    for (int m = 0; m < sc.num_channels(); ++m) {
      if (!sol.schedule.at(l, m)) continue;
      links.push_back({{"tx", sc.nodes[sc.links[l].tx].id},
                       {"rx", sc.nodes[sc.links[l].rx].id},
                       {"channel", sc.channels[m].id},
                       {"power_w", Round9(sol.allocation.power[l][m])},
                       {"flow_bps", Round9(sol.allocation.LinkChannelFlow(l, m))}});
    }
  }
  j["assignments"] = links;
  json routes = json::array();
  const auto session_routes = SessionRoutes(sc, sol);
  for (std::size_t k = 0; k < sc.sessions.size(); ++k) {
    json hops = json::array();
    for (const RouteHop& h : session_routes[k]) {
      hops.push_back({{"from", h.from_id}, {"to", h.to_id}, {"rate_bps", Round9(h.rate_bps)}});
    }
    routes.push_back({{"source", sc.nodes[sc.sessions[k].source].id},
                      {"dest", sc.nodes[sc.sessions[k].dest].id},
                      {"rate_bps", sc.sessions[k].rate_bps},
                      {"hops", hops}});
  }
  j["routes"] = routes;
  j["checker"] = {{"ok", check.ok()}, {"violations", check.violations}};
  j["warnings"] = sol.warnings;
  if (ctx.include_runtime) j["runtime_s"] = sol.runtime_s;
  return j.dump(2) + "\n";
}

std::string CsvHeader() {
  return "method,status,tx_rf_w,tx_circuit_w,rx_circuit_w,circuit_w,total_w,"
         "lower_bound_w,gap,max_span_mhz,spans,error\n";
}

std::string CsvRow(const Scenario& sc, const Solution& sol, const std::string& error) {
  const PowerBreakdown& b = sol.breakdown;
  double max_span = 0.0;
  std::string spans;
  for (const SpanRow& r : SpanTable(sc, sol)) {
    max_span = std::max(max_span, r.span_mhz);
    if (!spans.empty()) spans += ";";
    spans += std::to_string(r.node_id) + r.mode + ":" + Num(r.span_mhz);
  }
  std::string bound, gap;
  if (sol.bnb && std::isfinite(sol.bnb->lower_bound)) bound = Num(sol.bnb->lower_bound);
  if (sol.bnb && std::isfinite(sol.bnb->gap)) gap = Num(sol.bnb->gap);
  std::ostringstream os;
  os << Csv(sol.method) << ',' << ToString(sol.status) << ',' << Num(b.tx_rf) << ','
     << Num(b.tx_circuit) << ',' << Num(b.rx_circuit) << ',' << Num(b.circuit()) << ','
     << Num(b.total) << ',' << bound << ',' << gap << ',' << Num(max_span) << ','
     << Csv(spans) << ',' << Csv(error) << '\n';
  return os.str();
}

std::string CsvErrorRow(const std::string& method, const std::string& error) {
  return Csv(method) + ",error,,,,,,,,,," + Csv(error) + "\n";
}

std::string FormatSpanTable(const std::vector<SpanRow>& rows) {
  std::ostringstream os;
  os << "node  mode  span_mhz  channels\n";
  for (const SpanRow& r : rows) {
    char head[64];
    std::snprintf(head, sizeof head, "%4d  %-4s  %8s  ", r.node_id, r.mode.c_str(),
                  Num(r.span_mhz).c_str());
    os << head << '{';
    for (std::size_t k = 0; k < r.channel_ids.size(); ++k) {
      os << (k ? "," : "") << r.channel_ids[k];
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace ncospan
