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

// Linear outer approximation of c = ln(1 + s) over s in [sL, sU] (three
// tangents plus the chord), and the linear form of the index span
// constraints.

#ifndef NCOSPAN_RELAXATION_HPP_
#define NCOSPAN_RELAXATION_HPP_

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace ncospan {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

// coef_c * c + coef_s * s (sense) rhs
struct HullInequality {
  double coef_c = 0.0;
  double coef_s = 0.0;
  double rhs = 0.0;
  Sense sense = Sense::kLessEqual;

  // Signed violation at (s, c); <= 0 means satisfied.
  double Violation(double s, double c) const;
};

struct HullSegments {
  double s_lower = 0.0;
  double s_upper = 0.0;
  double beta = 0.0;  // where the tangents at sL and sU meet
  // I: tangent at sL, II: tangent at beta, III: tangent at sU, IV: chord.
  std::array<HullInequality, 4> segments;
};

// Throws Error when sU <= sL, sL < 0, or sU is too large to evaluate.
HullSegments BuildHull(double s_lower, double s_upper);

// Tangent of ln(1 + s) at \p s0 as c - s/(1+s0) <= ln(1+s0) - s0/(1+s0).
HullInequality TangentAt(double s0);

// q + sum_k coef_k x_k >= rhs, where k indexes the caller's index list.
struct SpanInequality {
  std::vector<std::pair<int, double>> x_terms;
  double rhs = 0.0;
};

// One inequality per ordered pair (m1, m2) of \p indices (including m1 == m2):
//   q + W (m2 x_m2 + G (1 - x_m2)) >= W (m1 x_m1 + 1)
// written as q + W (m2 - G) x_m2 - W m1 x_m1 >= W (1 - G). The bound q >= 0
// is left to the variable's domain. \p guard is G, >= every index.
std::vector<SpanInequality> LinearizeSpanConstraints(
    std::span<const int> indices, int guard, double width);

// Smallest q satisfying every inequality for the given 0/1 activity.
// Same family over channel edges: one row per ordered pair (a, b) forcing
// q >= upper[a] - lower[b] when both are active. \p guard must be >= every
// upper edge.
std::vector<SpanInequality> LinearizeSpanEdges(std::span<const double> lower,
                                               std::span<const double> upper,
                                               double guard);

double MinimalSpanFromInequalities(std::span<const SpanInequality> rows,
                                   std::span<const int> active);

}  // namespace ncospan

#endif  // NCOSPAN_RELAXATION_HPP_
