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

#include "inference/model.hpp"

namespace swd {

struct PosteriorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of p(w) proportional to Phi(y w / beta) N(w; prior_mean,
/// prior_variance), by adaptive Gauss-Kronrod quadrature in extended
/// precision. Independent of v()/w(): the integrand evaluates log Phi from
/// erfcl and the integration window is centred on a numerically located mode.
///
/// Throws invalid-argument on a bad prior or beta, numeric error when the
/// quadrature error estimate exceeds its tolerance.
PosteriorMoments exact_posterior_moments_1d(double prior_mean, double prior_variance,
                                            double beta, Label y);

}  // namespace swd
