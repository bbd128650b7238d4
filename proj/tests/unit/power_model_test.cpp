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

#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ncospan/error.hpp"
#include "ncospan/power_model.hpp"
#include "oracles.hpp"

namespace {
using namespace ncospan;
using Points = std::vector<std::pair<double, double>>;
}  // namespace

TEST_SUITE("power_model") {

TEST_CASE("single-point converter fits go through the origin") {
  const AffineFit dac = FitAffineFromPoints(Points{{150.0, 1.056}});
  CHECK(dac.intercept == 0.0);
  CHECK(dac.slope == doctest::Approx(0.00704).epsilon(1e-12));
  const AffineFit adc = FitAffineFromPoints(Points{{125.0, 0.908}});
  CHECK(adc.slope == doctest::Approx(0.007264).epsilon(1e-12));
}

TEST_CASE("flat curve fits to a pure intercept") {
  const AffineFit f = FitAffineFromPoints(Points{{0.0, 0.1}, {100.0, 0.1}});
  CHECK(f.intercept == doctest::Approx(0.1));
  CHECK(f.slope == doctest::Approx(0.0));
  CHECK_FALSE(f.slope_clamped);
}

TEST_CASE("least squares on noisy points and slope clamping") {
  // y = 0.2 + 0.01 x exactly at three points.
  const AffineFit f = FitAffineFromPoints(Points{{10, 0.3}, {20, 0.4}, {40, 0.6}});
  CHECK(f.intercept == doctest::Approx(0.2));
  CHECK(f.slope == doctest::Approx(0.01));
  const AffineFit down = FitAffineFromPoints(Points{{10, 0.5}, {20, 0.4}});
  CHECK(down.slope == 0.0);
  CHECK(down.slope_clamped);
  CHECK_THROWS_AS(FitAffineFromPoints(Points{{50, 0.1}, {50, 0.2}}), Error);
  CHECK_THROWS_AS(FitAffineFromPoints(Points{}), Error);
}

TEST_CASE("presets") {
  const RadioProfile hi = RadioPreset("high-slope");
  CHECK(hi.dac_slope == doctest::Approx(1.056 / 150e6).epsilon(1e-12));
  CHECK(hi.adc_slope == doctest::Approx(0.908 / 125e6).epsilon(1e-12));
  CHECK(hi.alpha1() == doctest::Approx(0.0353));
  CHECK(hi.beta1() == doctest::Approx(0.0608));
  const RadioProfile lo = RadioPreset("low-slope");
  CHECK(lo.dac_slope == doctest::Approx(0.05 * hi.dac_slope));
  CHECK(lo.adc_slope == doctest::Approx(0.05 * hi.adc_slope));
  CHECK_THROWS_AS(RadioPreset("medium"), Error);
  const RadioProfile cf = hi.CircuitFree();
  CHECK(cf.alpha1() == 0.0);
  CHECK(cf.beta2() == 0.0);
  CHECK(cf.k_pa() == hi.k_pa());
}

TEST_CASE("worst-case PAPR lands near 9 dB") {
  const double n = 2000.0 * (698.0 - 54.0) / 6.0;
  CHECK(std::abs(PaprDbWorstCase(n, 0.005, 3.5) - 9.0) <= 0.5);
}

TEST_CASE("PAPR matches an independent bisection") {
  for (double n : {10.0, 256.0, 2048.0, 214667.0}) {
    for (double gamma : {0.001, 0.01, 0.1}) {
      const double x = oracle::PaprRoot(n, gamma);
      CHECK(PaprDbWorstCase(n, gamma, 0.0) == doctest::Approx(10.0 * std::log10(x)).epsilon(1e-7));
      CHECK(PaprDbWorstCase(n, gamma, 2.0) ==
            doctest::Approx(10.0 * std::log10(x) - 2.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("PAPR without a root is an error") {
  // max of e^-x sqrt(pi x / 3) is below ln 2, so gamma = 0.5 is unreachable.
  CHECK_THROWS_AS(PaprDbWorstCase(1.0, 0.5, 0.0), Error);
  CHECK_THROWS_AS(PaprDbWorstCase(0.0, 0.01, 0.0), Error);
  CHECK_THROWS_AS(PaprDbWorstCase(10.0, 1.0, 0.0), Error);
}

TEST_CASE("PAPR grows with the subcarrier count") {
  double last = -1e9;
  for (double n : {4.0, 16.0, 64.0, 1024.0, 65536.0}) {
    const double v = PaprDbWorstCase(n, 0.01, 0.0);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("node power examples") {
  const RadioProfile hi = RadioPreset("high-slope");
  CHECK(NodePower(hi, 0, 0, false, false, {}).total == 0.0);

  RadioProfile p;
  p.dac_intercept = 0.0;
  p.tx_fixed = 0.1;
  p.dac_slope = 0.007264e-6;  // W per sample/s
  const PowerBreakdown b = NodePower(p, 42e6, 0, true, false, std::vector<double>{0.0});
  CHECK(b.total == doctest::Approx(0.1 + 0.007264 * 84).epsilon(1e-12));
  CHECK(b.total == doctest::Approx(0.710).epsilon(1e-3));

  RadioProfile amp;
  amp.papr_db = 9.0;
  amp.drain_efficiency = 0.75;
  CHECK(amp.k_pa() == doctest::Approx(std::pow(10.0, 0.9) / 0.75));
  amp.tx_fixed = 0.0;
  const PowerBreakdown rf = NodePower(amp, 0, 0, true, false, std::vector<double>{0.01});
  CHECK(rf.tx_rf == doctest::Approx(0.1059).epsilon(1e-3));
}

TEST_CASE("node power is linear in spans and powers") {
  const RadioProfile hi = RadioPreset("high-slope");
  auto total = [&](double qt, double qr, double p) {
    return NodePower(hi, qt, qr, true, true, std::vector<double>{p}).total;
  };
  const double base = total(6e6, 6e6, 0.01);
  CHECK(total(12e6, 6e6, 0.01) - base == doctest::Approx(hi.alpha2() * 12e6));
  CHECK(total(6e6, 18e6, 0.01) - base == doctest::Approx(hi.beta2() * 24e6));
  CHECK(total(6e6, 6e6, 0.03) - base == doctest::Approx(hi.k_pa() * 0.02));
  const PowerBreakdown b = NodePower(hi, 6e6, 6e6, true, true, std::vector<double>{0.01});
  CHECK(b.total == doctest::Approx(b.tx_rf + b.tx_circuit + b.rx_circuit));
}

TEST_CASE("flat converters make power independent of span") {
  const RadioProfile flat = RadioPreset("high-slope").WithScaledSlopes(0.0);
  const double a = NodePower(flat, 6e6, 6e6, true, true, std::vector<double>{0.1}).total;
  const double b = NodePower(flat, 600e6, 300e6, true, true, std::vector<double>{0.1}).total;
  CHECK(a == b);
}

TEST_CASE("bad node power inputs") {
  const RadioProfile hi = RadioPreset("high-slope");
  CHECK_THROWS_AS(NodePower(hi, 0, 0, true, false, std::vector<double>{-1.0}), Error);
  CHECK_THROWS_AS(NodePower(hi, -1.0, 0, true, false, {}), Error);
  CHECK_THROWS_AS(NodePower(hi, 6e6, 0, false, false, {}), Error);
}

}  // TEST_SUITE
