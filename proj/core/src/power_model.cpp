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

#include "ncospan/power_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncospan/error.hpp"

namespace ncospan {

namespace {

// Single-point converter datasheet fits, W per sample/s.
constexpr double kHighSlopeDac = 1.056 / 150e6;  // AD9777 at 150 MS/s
constexpr double kHighSlopeAdc = 0.908 / 125e6;  // ADS62P4 at 125 MS/s
constexpr double kLowSlopeFactor = 0.05;

}  // namespace

double RadioProfile::k_pa() const {
  return std::pow(10.0, papr_db / 10.0) / drain_efficiency;
}

void RadioProfile::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("radio profile: ") + what);
  };
  require(std::isfinite(dac_intercept) && dac_intercept >= 0.0,
          "dac intercept must be >= 0");
  require(std::isfinite(adc_intercept) && adc_intercept >= 0.0,
          "adc intercept must be >= 0");
  require(std::isfinite(dac_slope) && dac_slope >= 0.0,
          "dac slope must be >= 0");
  require(std::isfinite(adc_slope) && adc_slope >= 0.0,
          "adc slope must be >= 0");
  require(std::isfinite(tx_fixed) && tx_fixed >= 0.0,
          "tx fixed power must be >= 0");
  require(std::isfinite(rx_fixed) && rx_fixed >= 0.0,
          "rx fixed power must be >= 0");
  require(std::isfinite(papr_db), "papr must be finite");
  require(drain_efficiency > 0.0 && drain_efficiency <= 1.0,
          "drain efficiency must be in (0, 1]");
}

RadioProfile RadioProfile::CircuitFree() const {
  RadioProfile out = *this;
  out.name = name + "+circuit-free";
  out.dac_intercept = out.dac_slope = 0.0;
  out.adc_intercept = out.adc_slope = 0.0;
  out.tx_fixed = out.rx_fixed = 0.0;
  return out;
}

RadioProfile RadioProfile::WithScaledSlopes(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw ValidationError("slope scale factor must be finite and >= 0");
  }
  RadioProfile out = *this;
  out.dac_slope *= factor;
  out.adc_slope *= factor;
  return out;
}

RadioProfile RadioPreset(std::string_view name) {
  RadioProfile p;
  p.name = std::string(name);
  if (name == "high-slope") {
    p.dac_slope = kHighSlopeDac;
    p.adc_slope = kHighSlopeAdc;
  } else if (name == "low-slope") {
    p.dac_slope = kHighSlopeDac * kLowSlopeFactor;
    p.adc_slope = kHighSlopeAdc * kLowSlopeFactor;
  } else if (name == "custom") {
    // Default fixed blocks, no converters. Callers fill in the curves.
  } else {
    throw ValidationError("unknown radio preset '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> RadioPresetNames() {
  return {"high-slope", "low-slope", "custom"};
}

AffineFit FitAffineFromPoints(
    std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw ValidationError("affine fit needs >= 1 point");
  for (const auto& [r, p] : points) {
    if (!std::isfinite(r) || !std::isfinite(p) || r < 0.0 || p < 0.0) {
      throw ValidationError("affine fit points must be finite and >= 0");
    }
  }
  const bool same_rate = std::all_of(points.begin(), points.end(),
      [&](const auto& pt) { return pt.first == points.front().first; });
  if (points.size() == 1 || same_rate) {
    const bool same_power = std::all_of(points.begin(), points.end(),
        [&](const auto& pt) { return pt.second == points.front().second; });
    if (!same_power) {
      throw ValidationError("affine fit: identical rates with distinct powers");
    }
    const auto [r, p] = points.front();
    if (r <= 0.0) throw ValidationError("single-point fit needs rate > 0");
    return {0.0, p / r, false};
  }
  const double n = static_cast<double>(points.size());
  double sr = 0.0, sp = 0.0;
  for (const auto& [r, p] : points) {
    sr += r;
    sp += p;
  }
  const double mr = sr / n, mp = sp / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [r, p] : points) {
    sxx += (r - mr) * (r - mr);
    sxy += (r - mr) * (p - mp);
  }
  AffineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mp - fit.slope * mr;
  if (fit.slope < 0.0) {
    fit.slope = 0.0;
    fit.intercept = mp;
    fit.slope_clamped = true;
  }
  return fit;
}

double PaprDbWorstCase(double n_subcarriers, double gamma,
                       double coding_gain_db) {
  if (!(n_subcarriers >= 1.0)) throw ValidationError("PAPR: need N >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ValidationError("PAPR: gamma must be in (0, 1)");
  }
  // N e^{-x} sqrt(pi x / 3) = -ln(1 - gamma), decreasing for x > 1/2.
  const double target = -std::log1p(-gamma);
  auto g = [&](double x) {
    return std::log(n_subcarriers) - x +
           0.5 * std::log(std::numbers::pi * x / 3.0) - std::log(target);
  };
  double lo = 0.5, hi = 700.0;
  if (g(lo) < 0.0 || g(hi) > 0.0) {
    throw Error("PAPR: no root in search bracket");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 10.0 * std::log10(0.5 * (lo + hi)) - coding_gain_db;
}

PowerBreakdown& PowerBreakdown::operator+=(const PowerBreakdown& other) {
  tx_rf += other.tx_rf;
  tx_circuit += other.tx_circuit;
  rx_circuit += other.rx_circuit;
  total += other.total;
  return *this;
}

PowerBreakdown NodePower(const RadioProfile& profile, double tx_span_hz,
                         double rx_span_hz, bool tx_active, bool rx_active,
                         std::span<const double> tx_powers) {
  if (tx_span_hz < 0.0 || rx_span_hz < 0.0) {
    throw ValidationError("node power: negative span");
  }
  if ((!tx_active && tx_span_hz > 0.0) || (!rx_active && rx_span_hz > 0.0)) {
    throw ValidationError("node power: span on an inactive side");
  }
  PowerBreakdown out;
  for (double p : tx_powers) {
    if (!std::isfinite(p)) throw ValidationError("node power: non-finite transmit power");
    if (p < 0.0) throw ValidationError("node power: negative transmit power");
    out.tx_rf += profile.k_pa() * p;
  }
  if (tx_active) {
    out.tx_circuit = profile.alpha1() + profile.alpha2() * 2.0 * tx_span_hz;
  }
  if (rx_active) {
    out.rx_circuit = profile.beta1() + profile.beta2() * 2.0 * rx_span_hz;
  }
  out.total = out.tx_rf + out.tx_circuit + out.rx_circuit;
  return out;
}

}  // namespace ncospan
