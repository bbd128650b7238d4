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

#include "ncospan/relaxation.hpp"

#include <algorithm>
#include <cmath>

#include "ncospan/error.hpp"

namespace ncospan {

namespace {
constexpr double kMaxSnr = 1e15;
}

double HullInequality::Violation(double s, double c) const {
  const double lhs = coef_c * c + coef_s * s;
  switch (sense) {
    case Sense::kLessEqual: return lhs - rhs;
    case Sense::kGreaterEqual: return rhs - lhs;
    case Sense::kEqual: return std::abs(lhs - rhs);
  }
  return 0.0;
}

HullInequality TangentAt(double s0) {
  // c <= ln(1+s0) + (s - s0)/(1+s0), multiplied through by (1+s0).
  const double a = 1.0 + s0;
  return {a, -1.0, a * std::log1p(s0) - s0, Sense::kLessEqual};
}

HullSegments BuildHull(double s_lower, double s_upper) {
  if (!(s_lower >= 0.0) || !std::isfinite(s_lower)) {
    throw ValidationError("hull: sL must be finite and >= 0");
  }
  if (!(s_upper > s_lower)) throw ValidationError("hull: need sU > sL");
  if (!(s_upper <= kMaxSnr)) throw ValidationError("hull: sU overflow");

  HullSegments h;
  h.s_lower = s_lower;
  h.s_upper = s_upper;
  const double ll = std::log1p(s_lower);
  const double lu = std::log1p(s_upper);
  const double delta = lu - ll;
  h.beta = (1.0 + s_lower) * (1.0 + s_upper) * delta / (s_upper - s_lower) -
           1.0;
  h.beta = std::clamp(h.beta, s_lower, s_upper);
  h.segments[0] = TangentAt(s_lower);
  h.segments[1] = TangentAt(h.beta);
  h.segments[2] = TangentAt(s_upper);
  h.segments[3] = {s_upper - s_lower, -delta, s_upper * ll - s_lower * lu,
                   Sense::kGreaterEqual};
  return h;
}

std::vector<SpanInequality> LinearizeSpanConstraints(
    std::span<const int> indices, int guard, double width) {
  std::vector<SpanInequality> rows;
  const int n = static_cast<int>(indices.size());
  rows.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (indices[a] > guard) {
      throw ValidationError("span linearization: index exceeds guard");
    }
  }
  // q + W (m2 x2 + G (1 - x2)) >= W (m1 x1 + 1), per ordered pair.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      SpanInequality row;
      const double m1 = indices[a];
      const double m2 = indices[b];
      if (a == b) {
        row.x_terms.emplace_back(a, -width * guard);
      } else {
        row.x_terms.emplace_back(b, width * (m2 - guard));
        row.x_terms.emplace_back(a, -width * m1);
      }
      row.rhs = width * (1.0 - guard);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SpanInequality> LinearizeSpanEdges(std::span<const double> lower,
                                               std::span<const double> upper,
                                               double guard) {
  if (lower.size() != upper.size()) {
    throw ValidationError("span linearization: edge lists differ in length");
  }
  const int n = static_cast<int>(lower.size());
  for (int a = 0; a < n; ++a) {
    if (upper[a] > guard || lower[a] > upper[a]) {
      throw ValidationError("span linearization: bad edges or guard");
    }
  }
  std::vector<SpanInequality> rows;
  rows.reserve(static_cast<std::size_t>(n) * n);
  // q >= upper[a] x_a - lower[b] x_b - guard (1 - x_b)
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      SpanInequality row;
      if (a == b) {
        row.x_terms.emplace_back(a, lower[a] - guard - upper[a]);
      } else {
        row.x_terms.emplace_back(b, lower[b] - guard);
        row.x_terms.emplace_back(a, -upper[a]);
      }
      row.rhs = -guard;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double MinimalSpanFromInequalities(std::span<const SpanInequality> rows,
                                   std::span<const int> active) {
  double q = 0.0;
  for (const auto& row : rows) {
    double need = row.rhs;
    for (const auto& [idx, coef] : row.x_terms) need -= coef * active[idx];
    q = std::max(q, need);
  }
  return q;
}

}  // namespace ncospan
