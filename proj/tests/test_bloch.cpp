/* Copyright 2026 The Redctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include <cmath>

#include "redctl/bloch.hpp"
#include "redctl/fields.hpp"

using namespace redctl;

namespace {

// Grid maximum of the induced field over the rotation angle.
double grid_envelope(const BlochParams& p, double a) {
  const auto pair = PairDescriptor::polar(2);
  const DriftField x = bloch_drift(p);
  double best = -1e300;
  Vec av(1);
  av(0) = a;
  for (int i = 0; i < 20000; ++i)
    best = std::max(best, induced_field(pair, x, rotation2(2.0 * M_PI * i / 20000), av)(0));
  return best;
}

}  // namespace

TEST_CASE("parameters") {
  const BlochParams p = BlochParams::make(3.0);
  CHECK(p.a0() == doctest::Approx(-0.25));
  CHECK(p.t0() == doctest::Approx(std::log(10.0) / 6.0));
  CHECK(p.eta() == doctest::Approx(1.5));
  CHECK_THROWS_AS(BlochParams::make(1.2), DomainError);
  CHECK_THROWS_AS(BlochParams::make(3.0, 0.0), DomainError);
}

TEST_CASE("envelope values") {
  const BlochParams p = BlochParams::make(3.0);
  CHECK(envelope_u(p, -0.25) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(envelope_u(p, 1.0) == doctest::Approx(0.0));
  CHECK(envelope_u(p, -1.0) == doctest::Approx(25.0 / 8.0));
  for (double a : {-0.9, -0.4, -0.25, 0.0, 0.3, 0.8})
    CHECK(std::abs(envelope_u(p, a) - grid_envelope(p, a)) < 1e-6);
  CHECK_THROWS_AS(envelope_u(p, 1.5), DomainError);
}

TEST_CASE("optimal trajectory") {
  const BlochParams p = BlochParams::make(3.0);
  CHECK(optimal_a_star(p, 0.0) == doctest::Approx(-1.0));
  CHECK(std::abs(optimal_a_star(p, p.t0()) + 0.25) < 1e-12);
  CHECK(std::abs(optimal_a_star(p, 40.0) - 1.0) < 1e-9);
  CHECK(optimal_phi(p, 0.5) == doctest::Approx(M_PI / 2));
  CHECK(optimal_phi(p, -0.25) == doctest::Approx(M_PI / 2));
  // The optimal angle attains the envelope.
  const auto pair = PairDescriptor::polar(2);
  for (double a : {-0.9, -0.5, 0.4}) {
    Vec av(1);
    av(0) = a;
    const double v =
        induced_field(pair, bloch_drift(p), bloch_rotation(optimal_phi(p, a)), av)(0);
    CHECK(v == doctest::Approx(envelope_u(p, a)).epsilon(1e-12));
  }
}

TEST_CASE("optimal controls near the switching time") {
  const BlochParams p = BlochParams::make(3.0);
  const BlochControls c = optimal_controls(p, p.t0() - 1e-6);
  CHECK(std::abs(c.omega0) > 1e2);
  CHECK(std::abs(c.omega_c) < 1e-2);
  const BlochControls after = optimal_controls(p, p.t0() + 0.2);
  CHECK(after.omega0 == 0.0);
  CHECK(after.omega_c == 0.0);

  // omega0 is the derivative of the optimal angle along the optimal path.
  for (double t : {0.1, 0.2, 0.3}) {
    const double h = 1e-6;
    const double fd = (optimal_phi(p, optimal_a_star(p, t + h)) -
                       optimal_phi(p, optimal_a_star(p, t - h))) /
                      (2 * h);
    CHECK(optimal_controls(p, t).omega0 == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(std::isfinite(omega0_integral(p, 1e-2)));
  CHECK(omega0_integral(p, 1e-2) > 0.0);
}

TEST_CASE("rotation helpers") {
  CHECK(angle_rate(log_k(PairDescriptor::polar(2), bloch_rotation(M_PI / 2 + 0.3))) ==
        doctest::Approx(0.3));
}
