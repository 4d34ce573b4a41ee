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

#include <cmath>
#include <limits>
#include <numbers>

#include "common/error.hpp"
#include "doctest.h"
#include "inference/probit.hpp"

namespace {

// Extended-precision reference for N(t)/Phi(t); accurate well below t = -30
// because erfcl keeps relative precision deep into the tail.
long double reference_v(long double t) {
  const long double pdf = std::exp(-0.5L * t * t) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
  const long double cdf = 0.5L * std::erfc(-t / std::numbers::sqrt2_v<long double>);
  return pdf / cdf;
}

}  // namespace

TEST_CASE("v and w at the origin") {
  CHECK(swd::v(0.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-15));
  CHECK(swd::w(0.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(swd::v(0.0) == doctest::Approx(0.7978845608).epsilon(1e-10));
  CHECK(swd::w(0.0) == doctest::Approx(0.6366197724).epsilon(1e-10));
}

TEST_CASE("v(-20) against extended precision") {
  const double got = swd::v(-20.0);
  CHECK(got > 20.0);
  CHECK(got < 20.1);
  CHECK(got == doctest::Approx(static_cast<double>(reference_v(-20.0L))).epsilon(1e-13));
}

TEST_CASE("v matches extended precision on both branches") {
  for (double t = -35.0; t <= 30.0; t += 0.125) {
    const double ref = static_cast<double>(reference_v(t));
    CAPTURE(t);
    CHECK(swd::v(t) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("v + t on the asymptotic branch avoids cancellation") {
  for (double t : {-9.0, -15.0, -30.0}) {
    const long double ref = reference_v(t) + t;
    CAPTURE(t);
    CHECK(swd::v_plus_t(t) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
  }
}

TEST_CASE("stable branch seam is continuous") {
  const double eps = 1e-10;
  const double c = swd::kMillsCrossover;
  CHECK(std::fabs(swd::v(c - eps) - swd::v(c + eps)) < 1e-9);
  CHECK(std::fabs(swd::w(c - eps) - swd::w(c + eps)) < 1e-9);
  CHECK(std::fabs(swd::v(std::nextafter(c, -100.0)) - swd::v(c)) < 1e-9);
}

TEST_CASE("analytic identities of v and w") {
  double prev_v = std::numeric_limits<double>::infinity();
  // Beyond t ~ 38 v(t) is below the smallest subnormal double.
  for (double t = -40.0; t <= 36.0; t += 0.05) {
    CAPTURE(t);
    const double vt = swd::v(t);
    const double wt = swd::w(t);
    CHECK(vt > 0.0);
    CHECK(swd::v_plus_t(t) > 0.0);
    CHECK(wt > 0.0);
    CHECK(wt < 1.0);
    CHECK(vt < prev_v);
    prev_v = vt;
  }
  CHECK(swd::w(-30.0) > 0.998);
  CHECK(swd::w(30.0) < 1e-100);
}

TEST_CASE("non-finite arguments are rejected") {
  CHECK_THROWS_AS(swd::v(std::numeric_limits<double>::quiet_NaN()), swd::Error);
  CHECK_THROWS_AS(swd::w(std::numeric_limits<double>::infinity()), swd::Error);
  CHECK_THROWS_AS(swd::v(-std::numeric_limits<double>::infinity()), swd::Error);
}

TEST_CASE("normal cdf at zero is exactly one half") {
  CHECK(swd::normal_cdf(0.0) == 0.5);
  CHECK(swd::normal_cdf(-0.0) == 0.5);
}
