// Copyright 2026 The switchdetect Authors.
//
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

#include "inference/probit.hpp"

#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace swd {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;
constexpr int kFractionTerms = 120;

void check_finite(double t) {
  if (!std::isfinite(t)) throw invalid_argument("probit utility: non-finite argument");
}

// For x = -t >= 8 evaluates the two tails of the continued fraction
//   v(t) = x + 1/(x + 2/(x + 3/(x + ...)))
// returning {v, v + t}. The second tail is 1/(x + 2/(x + ...)), which
// sidesteps the cancellation in v - x.
struct MillsTails {
  double v;
  double v_plus_t;
};

MillsTails mills_fraction(double x) {
  double tail = x;
  for (int k = kFractionTerms; k >= 2; --k) tail = x + k / tail;
  const double inner = 1.0 / tail;
  return {x + inner, inner};
}

}  // namespace

double normal_pdf(double t) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double normal_cdf(double t) noexcept {
  return 0.5 * std::erfc(-t * std::numbers::sqrt2 / 2.0);
}

double v(double t) {
  check_finite(t);
  if (t < kMillsCrossover) return mills_fraction(-t).v;
  return normal_pdf(t) / normal_cdf(t);
}

double v_plus_t(double t) {
  check_finite(t);
  if (t < kMillsCrossover) return mills_fraction(-t).v_plus_t;
  return v(t) + t;
}

double w(double t) {
  check_finite(t);
  if (t < kMillsCrossover) {
    const auto m = mills_fraction(-t);
    return m.v * m.v_plus_t;
  }
  const double vt = normal_pdf(t) / normal_cdf(t);
  return vt * (vt + t);
}

}  // namespace swd
