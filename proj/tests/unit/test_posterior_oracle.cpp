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
#include <numbers>

#include "common/error.hpp"
#include "doctest.h"
#include "inference/model.hpp"
#include "inference/posterior_oracle.hpp"

using swd::Label;

namespace {

swd::GaussianBelief closed_form(double mean, double var, double beta, Label y) {
  const std::vector<std::pair<swd::FeatureId, swd::GaussianBelief>> e{{swd::FeatureId{1}, {mean, var}}};
  auto s = swd::ModelState::restore(swd::ModelConfig{beta, 0.0, 1.0}, e, 0, 0);
  swd::update(s, swd::FeatureVector{1}, y);
  return s.belief(swd::FeatureId{1});
}

}  // namespace

TEST_CASE("quadrature reproduces the unit-prior example") {
  const auto p = swd::exact_posterior_moments_1d(0.0, 1.0, 1.0, Label::kSwitch);
  CHECK(p.mean == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-9));
  CHECK(p.variance == doctest::Approx(1.0 - 1.0 / std::numbers::pi).epsilon(1e-9));

  const auto q = swd::exact_posterior_moments_1d(0.0, 1.0, 1.0, Label::kNoSwitch);
  CHECK(q.mean == doctest::Approx(-p.mean).epsilon(1e-12));
  CHECK(q.variance == doctest::Approx(p.variance).epsilon(1e-12));
}

TEST_CASE("flat likelihood leaves the prior unchanged") {
  const auto p = swd::exact_posterior_moments_1d(0.3, 2.0, 1e6, Label::kSwitch);
  CHECK(p.mean == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(p.variance == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("quadrature agrees with the closed-form update on a coarse grid") {
  for (double mean : {-5.0, -1.0, 0.5, 5.0})
    for (double var : {0.01, 1.0, 10.0})
      for (double beta : {0.1, 1.0, 5.0})
        for (Label y : {Label::kSwitch, Label::kNoSwitch}) {
          CAPTURE(mean);
          CAPTURE(var);
          CAPTURE(beta);
          const auto exact = swd::exact_posterior_moments_1d(mean, var, beta, y);
          const auto cf = closed_form(mean, var, beta, y);
          CHECK(cf.mean == doctest::Approx(exact.mean).epsilon(1e-6));
          CHECK(cf.variance == doctest::Approx(exact.variance).epsilon(1e-6));
        }
}

TEST_CASE("invalid oracle inputs") {
  CHECK_THROWS_AS(swd::exact_posterior_moments_1d(0.0, 0.0, 1.0, Label::kSwitch), swd::Error);
  CHECK_THROWS_AS(swd::exact_posterior_moments_1d(0.0, 1.0, -1.0, Label::kSwitch), swd::Error);
}
