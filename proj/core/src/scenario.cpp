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

#include "ncospan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ncospan/error.hpp"

namespace ncospan {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

std::vector<int> Scenario::LinkChannels(int link) const {
  const auto& a = nodes.at(links.at(link).tx).channels;
  const auto& b = nodes.at(links.at(link).rx).channels;
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool Scenario::LinkHasChannel(int link, int channel) const {
  const auto& a = nodes[links[link].tx].channels;
  const auto& b = nodes[links[link].rx].channels;
  return std::binary_search(a.begin(), a.end(), channel) &&
         std::binary_search(b.begin(), b.end(), channel);
}

std::optional<int> Scenario::FindLink(int tx, int rx) const {
  for (int l = 0; l < num_links(); ++l) {
    if (links[l].tx == tx && links[l].rx == rx) return l;
  }
  return std::nullopt;
}

double Scenario::CrossGain(int from, int to, int channel) const {
  const auto l = FindLink(from, to);
  return l ? links[*l].gain[channel] : 0.0;
}

int Scenario::NodeIndex(int id) const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes[i].id == id) return i;
  }
  throw ValidationError("unknown node id " + std::to_string(id));
}

int Scenario::ChannelIndex(int id) const {
  for (int m = 0; m < num_channels(); ++m) {
    if (channels[m].id == id) return m;
  }
  throw ValidationError("unknown channel id " + std::to_string(id));
}

std::vector<std::string> Scenario::Violations() const {
  std::vector<std::string> v;
  auto fail = [&](std::string s) { v.push_back(std::move(s)); };

  if (channels.empty()) fail("no channels");
  std::set<int> channel_ids;
  for (int m = 0; m < num_channels(); ++m) {
    const Channel& c = channels[m];
    if (!channel_ids.insert(c.id).second) {
      fail("duplicate channel id " + std::to_string(c.id));
    }
    if (!(c.width_mhz > 0.0) || !std::isfinite(c.width_mhz)) {
      fail("channel " + std::to_string(c.id) + " width must be > 0");
    }
    if (!std::isfinite(c.center_mhz)) {
      fail("channel " + std::to_string(c.id) + " center must be finite");
    }
    if (m > 0) {
      const Channel& p = channels[m - 1];
      if (!(c.center_mhz > p.center_mhz)) {
        fail("channel centers not strictly increasing at channel " +
             std::to_string(c.id));
      } else if (p.upper_edge_mhz() > c.lower_edge_mhz() + 1e-9) {
        fail("channel overlap between " + std::to_string(p.id) + " and " +
             std::to_string(c.id));
      }
    }
  }

  std::set<int> node_ids;
  for (const Node& n : nodes) {
    if (!node_ids.insert(n.id).second) {
      fail("duplicate node id " + std::to_string(n.id));
    }
    if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
      fail("node " + std::to_string(n.id) + " position not finite");
    }
    for (int m : n.channels) {
      if (m < 0 || m >= num_channels()) {
        fail("node " + std::to_string(n.id) + " lists an unknown channel");
      }
    }
    if (!std::is_sorted(n.channels.begin(), n.channels.end()) ||
        std::adjacent_find(n.channels.begin(), n.channels.end()) !=
            n.channels.end()) {
      fail("node " + std::to_string(n.id) + " channel list not a set");
    }
  }

  std::set<std::pair<int, int>> pairs;
  for (int l = 0; l < num_links(); ++l) {
    const Link& k = links[l];
    if (k.tx < 0 || k.tx >= num_nodes() || k.rx < 0 || k.rx >= num_nodes()) {
      fail("link " + std::to_string(l) + " references an unknown node");
      continue;
    }
    const std::string name = "link " + std::to_string(nodes[k.tx].id) + "->" +
                             std::to_string(nodes[k.rx].id);
    if (k.tx == k.rx) fail(name + " has tx == rx");
    if (!pairs.insert({k.tx, k.rx}).second) fail("duplicate " + name);
    if (static_cast<int>(k.gain.size()) != num_channels()) {
      fail(name + " gain vector has the wrong length");
      continue;
    }
    for (int m = 0; m < num_channels(); ++m) {
      const bool common = LinkHasChannel(l, m);
      const double g = k.gain[m];
      if (common && !(g > 0.0 && std::isfinite(g))) {
        fail(name + " gain on channel " + std::to_string(channels[m].id) +
             " must be > 0");
      }
      if (!common && g != 0.0) {
        fail(name + " has a gain on channel " +
             std::to_string(channels[m].id) + " outside its common set");
      }
    }
  }

  for (const Session& s : sessions) {
    if (s.source < 0 || s.source >= num_nodes() || s.dest < 0 ||
        s.dest >= num_nodes()) {
      fail("session references an unknown node");
      continue;
    }
    const std::string name = "session " + std::to_string(nodes[s.source].id) +
                             "->" + std::to_string(nodes[s.dest].id);
    if (s.source == s.dest) fail(name + " has source == dest");
    if (!(s.rate_bps > 0.0) || !std::isfinite(s.rate_bps)) {
      fail(name + " rate must be > 0");
    }
  }

  if (!(noise_density > 0.0)) fail("N0 must be > 0");
  if (!(interference_threshold >= 0.0)) fail("P_I must be >= 0");
  if (!(max_tx_power > 0.0)) fail("P_max must be > 0");
  if (!(big_m >= max_tx_power)) fail("A must be >= P_max");
  for (const Channel& c : channels) {
    if (!(interference_threshold < noise_density * c.width_hz())) {
      fail("P_I must be below N0*W on channel " + std::to_string(c.id));
      break;
    }
  }
  for (const Channel& c : channels) {
    if (!(q_max_hz >= c.width_hz() * (1.0 - 1e-12))) {
      fail("q_max must be >= every channel width");
      break;
    }
  }
  try {
    radio.Validate();
  } catch (const ValidationError& e) {
    fail(e.what());
  }
  return v;
}

void Scenario::Validate() const {
  const auto v = Violations();
  if (!v.empty()) throw ValidationError(v.front());
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace {

void CheckKeys(const json& obj, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw ParseError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T Get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ParseError("missing key '" + std::string(key) + "' in " + where);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError("key '" + std::string(key) + "' in " + where +
                     " has the wrong type");
  }
}

template <typename T>
T GetOr(const json& obj, const char* key, T fallback, const std::string& where) {
  return obj.contains(key) ? Get<T>(obj, key, where) : fallback;
}

RadioProfile ParseRadio(const json& j) {
  if (j.is_string()) return RadioPreset(j.get<std::string>());
  CheckKeys(j,
            {"preset", "name", "dac_intercept_w", "dac_slope_w_per_sps",
             "adc_intercept_w", "adc_slope_w_per_sps", "tx_fixed_w",
             "rx_fixed_w", "papr_db", "drain_efficiency"},
            "radio");
  RadioProfile r = RadioPreset(GetOr<std::string>(j, "preset", "custom", "radio"));
  r.name = GetOr<std::string>(j, "name", r.name, "radio");
  r.dac_intercept = GetOr(j, "dac_intercept_w", r.dac_intercept, "radio");
  r.dac_slope = GetOr(j, "dac_slope_w_per_sps", r.dac_slope, "radio");
  r.adc_intercept = GetOr(j, "adc_intercept_w", r.adc_intercept, "radio");
  r.adc_slope = GetOr(j, "adc_slope_w_per_sps", r.adc_slope, "radio");
  r.tx_fixed = GetOr(j, "tx_fixed_w", r.tx_fixed, "radio");
  r.rx_fixed = GetOr(j, "rx_fixed_w", r.rx_fixed, "radio");
  r.papr_db = GetOr(j, "papr_db", r.papr_db, "radio");
  r.drain_efficiency = GetOr(j, "drain_efficiency", r.drain_efficiency, "radio");
  return r;
}

}  // namespace

Scenario ParseScenarioUnchecked(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  CheckKeys(root,
            {"channels", "nodes", "links", "sessions", "radio", "limits",
             "seed"},
            "scenario");
  Scenario s;

  for (const json& c : Get<json>(root, "channels", "scenario")) {
    CheckKeys(c, {"id", "center_mhz", "width_mhz"}, "channel");
    s.channels.push_back({Get<int>(c, "id", "channel"),
                          Get<double>(c, "center_mhz", "channel"),
                          Get<double>(c, "width_mhz", "channel")});
  }
  auto channel_pos = [&](int id) {
    for (int m = 0; m < s.num_channels(); ++m) {
      if (s.channels[m].id == id) return m;
    }
    throw ValidationError("unknown channel id " + std::to_string(id));
  };

  for (const json& n : Get<json>(root, "nodes", "scenario")) {
    CheckKeys(n, {"id", "x", "y", "channels"}, "node");
    Node node{Get<int>(n, "id", "node"), Get<double>(n, "x", "node"),
              Get<double>(n, "y", "node"), {}};
    if (n.contains("channels")) {
      for (int id : Get<std::vector<int>>(n, "channels", "node")) {
        node.channels.push_back(channel_pos(id));
      }
      std::sort(node.channels.begin(), node.channels.end());
    } else {
      for (int m = 0; m < s.num_channels(); ++m) node.channels.push_back(m);
    }
    s.nodes.push_back(std::move(node));
  }

  for (const json& l : GetOr<json>(root, "links", json::array(), "scenario")) {
    CheckKeys(l, {"tx", "rx", "gain_db", "gain"}, "link");
    Link link;
    link.tx = s.NodeIndex(Get<int>(l, "tx", "link"));
    link.rx = s.NodeIndex(Get<int>(l, "rx", "link"));
    link.gain.assign(s.num_channels(), 0.0);
    const bool db = l.contains("gain_db");
    if (db == l.contains("gain")) {
      throw ParseError("link needs exactly one of 'gain_db' or 'gain'");
    }
    const json& g = l.at(db ? "gain_db" : "gain");
    auto convert = [db](double v) { return db ? std::pow(10.0, v / 10.0) : v; };
    if (g.is_number()) {
      const double v = convert(g.get<double>());
      for (int m = 0; m < s.num_channels(); ++m) {
        const auto& a = s.nodes[link.tx].channels;
        const auto& b = s.nodes[link.rx].channels;
        if (std::binary_search(a.begin(), a.end(), m) &&
            std::binary_search(b.begin(), b.end(), m)) {
          link.gain[m] = v;
        }
      }
    } else if (g.is_object()) {
      for (const auto& item : g.items()) {
        int id = 0;
        try {
          id = std::stoi(item.key());
        } catch (const std::exception&) {
          throw ParseError("gain key '" + item.key() + "' is not a channel id");
        }
        if (!item.value().is_number()) {
          throw ParseError("gain values must be numbers");
        }
        link.gain[channel_pos(id)] = convert(item.value().get<double>());
      }
    } else {
      throw ParseError("link gain must be a number or an object");
    }
    s.links.push_back(std::move(link));
  }

  for (const json& x : Get<json>(root, "sessions", "scenario")) {
    CheckKeys(x, {"source", "dest", "rate_bps"}, "session");
    s.sessions.push_back({s.NodeIndex(Get<int>(x, "source", "session")),
                          s.NodeIndex(Get<int>(x, "dest", "session")),
                          Get<double>(x, "rate_bps", "session")});
  }

  s.radio = root.contains("radio") ? ParseRadio(root.at("radio"))
                                   : RadioPreset("high-slope");

  const json& lim = Get<json>(root, "limits", "scenario");
  CheckKeys(lim, {"N0", "P_I", "P_max", "A", "q_max"}, "limits");
  s.noise_density = Get<double>(lim, "N0", "limits");
  s.max_tx_power = Get<double>(lim, "P_max", "limits");
  s.interference_threshold = GetOr(
      lim, "P_I",
      s.channels.empty() ? 0.0 : 0.1 * s.noise_density * s.channels[0].width_hz(),
      "limits");
  s.big_m = GetOr(lim, "A", s.max_tx_power, "limits");
  double full_band = 0.0;
  if (!s.channels.empty()) {
    full_band = (s.channels.back().upper_edge_mhz() -
                 s.channels.front().lower_edge_mhz()) * 1e6;
  }
  s.q_max_hz = GetOr(lim, "q_max", full_band, "limits");
  s.seed = GetOr<std::uint64_t>(root, "seed", 1, "scenario");
  return s;
}

Scenario ParseScenario(const std::string& text) {
  Scenario s = ParseScenarioUnchecked(text);
  s.Validate();
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string SerializeScenario(const Scenario& s) {
  json root;
  root["channels"] = json::array();
  for (const Channel& c : s.channels) {
    root["channels"].push_back(
        {{"id", c.id}, {"center_mhz", c.center_mhz}, {"width_mhz", c.width_mhz}});
  }
  root["nodes"] = json::array();
  for (const Node& n : s.nodes) {
    json ids = json::array();
    for (int m : n.channels) ids.push_back(s.channels[m].id);
    root["nodes"].push_back(
        {{"id", n.id}, {"x", n.x}, {"y", n.y}, {"channels", ids}});
  }
  root["links"] = json::array();
  for (const Link& l : s.links) {
    json g = json::object();
    for (int m = 0; m < s.num_channels(); ++m) {
      if (l.gain[m] != 0.0) g[std::to_string(s.channels[m].id)] = l.gain[m];
    }
    root["links"].push_back(
        {{"tx", s.nodes[l.tx].id}, {"rx", s.nodes[l.rx].id}, {"gain", g}});
  }
  root["sessions"] = json::array();
  for (const Session& x : s.sessions) {
    root["sessions"].push_back({{"source", s.nodes[x.source].id},
                                {"dest", s.nodes[x.dest].id},
                                {"rate_bps", x.rate_bps}});
  }
  const RadioProfile& r = s.radio;
  root["radio"] = {{"name", r.name},
                   {"dac_intercept_w", r.dac_intercept},
                   {"dac_slope_w_per_sps", r.dac_slope},
                   {"adc_intercept_w", r.adc_intercept},
                   {"adc_slope_w_per_sps", r.adc_slope},
                   {"tx_fixed_w", r.tx_fixed},
                   {"rx_fixed_w", r.rx_fixed},
                   {"papr_db", r.papr_db},
                   {"drain_efficiency", r.drain_efficiency}};
  root["limits"] = {{"N0", s.noise_density},
                    {"P_I", s.interference_threshold},
                    {"P_max", s.max_tx_power},
                    {"A", s.big_m},
                    {"q_max", s.q_max_hz}};
  root["seed"] = s.seed;
  return root.dump(2) + "\n";
}

void SaveScenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write scenario file " + path.string());
  out << SerializeScenario(scenario);
}

// ---------------------------------------------------------------------------
// Channel plans
// ---------------------------------------------------------------------------

std::vector<int> RemapChannelIndices(const std::vector<Channel>& channels) {
  std::vector<int> out;
  out.reserve(channels.size());
  for (const Channel& c : channels) {
    out.push_back(static_cast<int>(std::floor(c.center_mhz / c.width_mhz + 1e-9)));
  }
  return out;
}

std::vector<Channel> WichitaChannelPlan() {
  return {{2, 57, 6},   {5, 79, 6},   {6, 85, 6},  {17, 491, 6},
          {23, 527, 6}, {24, 533, 6}, {47, 671, 6}};
}

std::vector<Channel> ContiguousChannelPlan(int count, double width_mhz,
                                           double first_center_mhz) {
  std::vector<Channel> out;
  for (int m = 0; m < count; ++m) {
    out.push_back({m + 1, first_center_mhz + m * width_mhz, width_mhz});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

Scenario GenerateScenario(const GeneratorParams& p) {
  if (p.node_count < 2) throw ValidationError("generator: need >= 2 nodes");
  if (p.channels.empty()) throw ValidationError("generator: no channels");
  if (!p.positions.empty() &&
      static_cast<int>(p.positions.size()) != p.node_count) {
    throw ValidationError("generator: positions do not match node count");
  }
  std::mt19937_64 rng(p.seed);
  Scenario s;
  s.channels = p.channels;
  s.seed = p.seed;
  s.radio = p.radio;

  std::uniform_real_distribution<double> ux(0.0, p.area_width_m);
  std::uniform_real_distribution<double> uy(0.0, p.area_height_m);
  for (int i = 0; i < p.node_count; ++i) {
    Node n;
    n.id = i + 1;
    if (p.positions.empty()) {
      n.x = ux(rng);
      n.y = uy(rng);
    } else {
      std::tie(n.x, n.y) = p.positions[i];
    }
    for (int m = 0; m < s.num_channels(); ++m) n.channels.push_back(m);
    s.nodes.push_back(std::move(n));
  }

  const double g0 = std::pow(10.0, p.reference_gain_db / 10.0);
  const double half = p.shadowing_db / 2.0;
  std::uniform_real_distribution<double> shadow(-half, half);
  for (int i = 0; i < p.node_count; ++i) {
    for (int j = 0; j < p.node_count; ++j) {
      if (i == j) continue;
      const double d = std::hypot(s.nodes[i].x - s.nodes[j].x,
                                  s.nodes[i].y - s.nodes[j].y);
      if (d == 0.0) {
        throw ValidationError("generator: nodes " + std::to_string(i + 1) +
                              " and " + std::to_string(j + 1) +
                              " share a position");
      }
      if (p.link_range_m > 0.0 && d > p.link_range_m) continue;
      Link link{i, j, std::vector<double>(s.num_channels(), 0.0)};
      for (int m = 0; m < s.num_channels(); ++m) {
        const double x = half > 0.0 ? shadow(rng) : 0.0;
        link.gain[m] = g0 * std::pow(d, -p.path_loss_exponent) *
                       std::pow(10.0, x / 10.0);
      }
      s.links.push_back(std::move(link));
    }
  }

  for (const SessionSpec& spec : p.sessions) {
    s.sessions.push_back(
        {s.NodeIndex(spec.source_id), s.NodeIndex(spec.dest_id), spec.rate_bps});
  }

  double w_min = s.channels.front().width_hz();
  for (const Channel& c : s.channels) w_min = std::min(w_min, c.width_hz());
  s.noise_density = p.noise_density;
  s.interference_threshold = p.interference_threshold > 0.0
                                 ? p.interference_threshold
                                 : 0.1 * p.noise_density * w_min;
  s.max_tx_power = p.max_tx_power;
  s.big_m = std::max(p.big_m, p.max_tx_power);
  s.q_max_hz = p.q_max_hz > 0.0
                   ? p.q_max_hz
                   : (s.channels.back().upper_edge_mhz() -
                      s.channels.front().lower_edge_mhz()) * 1e6;
  s.Validate();
  return s;
}

}  // namespace ncospan
