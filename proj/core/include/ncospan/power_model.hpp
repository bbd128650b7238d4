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

// Radio front-end power accounting. A node's transmit path burns
//   alpha1 + alpha2 * f_st + k_pa * sum(p)
// and its receive path burns
//   beta1 + beta2 * f_sr,
// where the sampling rates are twice the spectrum span of the path.

#ifndef NCOSPAN_POWER_MODEL_HPP_
#define NCOSPAN_POWER_MODEL_HPP_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncospan {

// Fixed block powers of the RF chain, in watts.
inline constexpr double kTxFilterPower = 5.0e-3;
inline constexpr double kMixerPower = 30.3e-3;
inline constexpr double kRxFilterPower = 7.5e-3;
inline constexpr double kIfAmpPower = 3.0e-3;
inline constexpr double kLnaPower = 20.0e-3;
inline constexpr double kDefaultTxFixed = kTxFilterPower + kMixerPower;
inline constexpr double kDefaultRxFixed =
    kRxFilterPower + kMixerPower + kIfAmpPower + kLnaPower;
inline constexpr double kDefaultPaprDb = 9.0;
inline constexpr double kDefaultDrainEfficiency = 0.75;

struct RadioProfile {
  std::string name = "custom";
  double dac_intercept = 0.0;  // k1, W
  double dac_slope = 0.0;      // k2, W per sample/s
  double adc_intercept = 0.0;  // k3, W
  double adc_slope = 0.0;      // k4, W per sample/s
  double tx_fixed = kDefaultTxFixed;  // k_t, W
  double rx_fixed = kDefaultRxFixed;  // k_r, W
  double papr_db = kDefaultPaprDb;
  double drain_efficiency = kDefaultDrainEfficiency;

  double alpha1() const { return dac_intercept + tx_fixed; }
  double alpha2() const { return dac_slope; }
  double beta1() const { return adc_intercept + rx_fixed; }
  double beta2() const { return adc_slope; }
  double k_pa() const;

  // Throws ValidationError naming the violated invariant.
  void Validate() const;

  // Same profile with every circuit term (intercepts, slopes, fixed blocks)
  // zeroed. Amplifier constants are kept.
  RadioProfile CircuitFree() const;
  // Multiplies both converter slopes by \p factor.
  RadioProfile WithScaledSlopes(double factor) const;

  bool operator==(const RadioProfile&) const = default;
};

// "high-slope": AD9777 DAC / ADS62P4 ADC single-point fits.
// "low-slope": the same curves with slopes scaled by 0.05 (labeled
// approximation of the low-power converter pair).
RadioProfile RadioPreset(std::string_view name);
std::vector<std::string> RadioPresetNames();

struct AffineFit {
  double intercept = 0.0;  // W
  double slope = 0.0;      // W per MS/s
  bool slope_clamped = false;
};

// Least-squares affine fit of converter power against sampling rate.
// Points are (rate in MS/s, power in W). A single point is fitted through the
// origin. Negative slopes are clamped to zero and flagged.
AffineFit FitAffineFromPoints(std::span<const std::pair<double, double>> points);

// Worst-case PAPR in dB: solves 1 - exp(-N e^{-x} sqrt(pi x / 3)) = gamma for
// x on the branch where the tail probability decreases in x, converts to dB
// and subtracts the coding gain. Throws Error when no root exists.
double PaprDbWorstCase(double n_subcarriers, double gamma,
                       double coding_gain_db);

struct PowerBreakdown {
  double tx_rf = 0.0;       // sum k_pa * p
  double tx_circuit = 0.0;  // sum alpha1_i + alpha2 f_st,i
  double rx_circuit = 0.0;  // sum beta1_i + beta2 f_sr,i
  double total = 0.0;

  PowerBreakdown& operator+=(const PowerBreakdown& other);
  double circuit() const { return tx_circuit + rx_circuit; }
};

// Contribution of one node. Spans in Hz, powers in W. Sampling rate is taken
// as twice the span. Throws Error on negative inputs or on a nonzero span for
// an inactive path.
PowerBreakdown NodePower(const RadioProfile& profile, double tx_span_hz,
                         double rx_span_hz, bool tx_active, bool rx_active,
                         std::span<const double> tx_powers);

}  // namespace ncospan

#endif  // NCOSPAN_POWER_MODEL_HPP_
