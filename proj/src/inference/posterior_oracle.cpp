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

#include "inference/posterior_oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace swd {
namespace {

using Real = long double;

constexpr int kPanels = 32;
constexpr Real kHalfWidthInSd = 80.0L;
constexpr Real kRelTolerance = 1e-10L;

Real log_normal_cdf(Real x) {
  if (x > -100.0L) return std::log(0.5L * std::erfc(-x / std::numbers::sqrt2_v<Real>));
  // Asymptotic tail: log(phi(x)/|x|) + log(1 - 1/x^2 + 3/x^4 - 15/x^6).
  const Real x2 = x * x;
  const Real series = 1.0L - 1.0L / x2 + 3.0L / (x2 * x2) - 15.0L / (x2 * x2 * x2);
  return -0.5L * x2 - std::log(-x) - 0.5L * std::log(2.0L * std::numbers::pi_v<Real>) +
         std::log(series);
}

template <typename F>
Real integrate_panels(F f, Real lo, Real hi) {
  using boost::math::quadrature::gauss_kronrod;
  Real total = 0.0L, total_err = 0.0L, total_l1 = 0.0L;
  const Real width = (hi - lo) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    Real err = 0.0L, l1 = 0.0L;
    const Real a = lo + width * i;
    const Real b = (i + 1 == kPanels) ? hi : a + width;
    total += gauss_kronrod<Real, 61>::integrate(f, a, b, 15, 1e-14L, &err, &l1);
    total_err += err;
    total_l1 += l1;
  }
  if (!(total_err <= kRelTolerance * total_l1) || !std::isfinite(total))
    throw numeric_error("posterior quadrature did not converge");
  return total;
}

}  // namespace

PosteriorMoments exact_posterior_moments_1d(double prior_mean, double prior_variance,
                                            double beta, Label y) {
  if (!(std::isfinite(prior_mean) && std::isfinite(prior_variance) && prior_variance > 0.0))
    throw invalid_argument("exact posterior: prior variance must be > 0");
  if (!(std::isfinite(beta) && beta > 0.0))
    throw invalid_argument("exact posterior: beta must be > 0");

  // Work in the standardized prior coordinate z, w = m + s z, so the log
  // integrand is log Phi(a + b z) - z^2 / 2.
  const Real s = std::sqrt(static_cast<Real>(prior_variance));
  const Real a = sign(y) * static_cast<Real>(prior_mean) / beta;
  const Real b = sign(y) * s / beta;
  const auto log_density = [=](Real z) { return log_normal_cdf(a + b * z) - 0.5L * z * z; };

  // The log integrand is concave, so its maximum is unique and lies within
  // |a| of the origin.
  const Real bracket = std::fabs(a) + 10.0L;
  const auto [mode, neg_peak] = boost::math::tools::brent_find_minima(
      [&](Real z) { return -log_density(z); }, -bracket, bracket,
      std::numeric_limits<Real>::digits / 2);
  const Real peak = -neg_peak;

  const Real h = 1e-3L * std::min<Real>(1.0L, 1.0L / std::fabs(b));
  const Real curvature =
      -(log_density(mode + h) - 2.0L * peak + log_density(mode - h)) / (h * h);
  const Real sd = 1.0L / std::sqrt(std::max<Real>(curvature, 1.0L));
  const Real lo = mode - kHalfWidthInSd * sd;
  const Real hi = mode + kHalfWidthInSd * sd;

  const auto weight = [=](Real z) { return std::exp(log_density(z) - peak); };
  const Real mass = integrate_panels(weight, lo, hi);
  const Real mean_z = integrate_panels([=](Real z) { return z * weight(z); }, lo, hi) / mass;
  const Real var_z = integrate_panels(
                         [=](Real z) {
                           const Real d = z - mean_z;
                           return d * d * weight(z);
                         },
                         lo, hi) /
                     mass;

  return {static_cast<double>(prior_mean + s * mean_z),
          static_cast<double>(s * s * var_z)};
}

}  // namespace swd
