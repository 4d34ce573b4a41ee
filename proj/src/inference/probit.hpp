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

#pragma once

namespace swd {

// Standard normal density and distribution function.
double normal_pdf(double t) noexcept;
double normal_cdf(double t) noexcept;

// Below this argument v() and w() switch from the direct pdf/cdf ratio to a
// continued-fraction expansion of the inverse Mills ratio.
inline constexpr double kMillsCrossover = -8.0;

/// Inverse Mills ratio N(t)/Phi(t): mean-shift factor of the probit update.
/// Throws an invalid-argument error for non-finite t.
double v(double t);

/// v(t) * (v(t) + t): variance-shrink factor in (0, 1). For t above ~38 both
/// v and w underflow to zero.
double w(double t);

/// v(t) + t without cancellation on the asymptotic branch. Exposed for the
/// v/w identity checks.
double v_plus_t(double t);

}  // namespace swd
