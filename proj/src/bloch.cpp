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

#include "redctl/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace redctl {

namespace {

// Closed forms at gamma = 1 with transverse rate g.
double a0_unit(double g) { return -1.0 / (2.0 * (g - 1.0)); }
double t0_unit(double g) { return std::log((g - 1.0) * (2.0 * g - 1.0)) / (2.0 * g); }
double eta_unit(double g) { return g / (g - 1.0); }
double delta_unit(double g, double t) {
  return (1.0 - 2.0 * g) * (1.0 - 2.0 * g) * std::exp(-2.0 * g * t) - 1.0;
}

double u_unit(double g, double a) {
  if (a <= a0_unit(g)) return -(1.0 / (4.0 * (g - 1.0) * a) + g * a);
  return 1.0 - a;
}

double a_star_unit(double g, double t) {
  if (t <= t0_unit(g))
    return -std::sqrt(std::max(0.0, delta_unit(g, t))) / (2.0 * std::sqrt(g * (g - 1.0)));
  const double c = (2.0 * g - 1.0) / (2.0 * (g - 1.0)) *
                   std::pow((g - 1.0) * (2.0 * g - 1.0), 1.0 / (2.0 * g));
  return 1.0 - c * std::exp(-t);
}

BlochControls controls_unit(double g, double t) {
  if (t >= t0_unit(g)) return {};
  const double d = delta_unit(g, t), eta = eta_unit(g);
  const double gap = std::max(d - eta, 0.0);
  BlochControls c;
  c.omega0 = -g * (d + 1.0) / d * std::sqrt(eta / gap);
  c.omega_c = -g / d * std::sqrt(gap / eta);
  return c;
}

}  // namespace

BlochParams BlochParams::make(double big_gamma, double small_gamma) {
  if (!(small_gamma > 0) || !std::isfinite(small_gamma))
    throw DomainError("longitudinal rate must be positive");
  if (!(big_gamma / small_gamma >= 1.5) || !std::isfinite(big_gamma))
    throw DomainError("transverse rate must be at least 3/2 of the longitudinal rate");
  return {big_gamma, small_gamma};
}

double BlochParams::a0() const { return a0_unit(ratio()); }
double BlochParams::t0() const { return t0_unit(ratio()) / small_gamma; }
double BlochParams::eta() const { return eta_unit(ratio()); }
double BlochParams::delta(double t) const { return delta_unit(ratio(), small_gamma * t); }

DriftField bloch_drift(const BlochParams& p) {
  return DriftField::bloch(p.big_gamma, p.small_gamma);
}

double envelope_u(const BlochParams& p, double a) {
  if (!(a >= -1.0 && a <= 1.0)) throw DomainError("radius must lie in [-1, 1]");
  return p.small_gamma * u_unit(p.ratio(), a);
}

double optimal_a_star(const BlochParams& p, double t) {
  if (!(t >= 0)) throw DomainError("time must be nonnegative");
  return a_star_unit(p.ratio(), p.small_gamma * t);
}

double optimal_phi(const BlochParams& p, double a) {
  if (a <= p.a0()) {
    const double x = std::clamp(1.0 / (2.0 * (p.ratio() - 1.0) * a), -1.0, 1.0);
    return 1.5 * M_PI - std::acos(x);
  }
  return 0.5 * M_PI;
}

BlochControls optimal_controls(const BlochParams& p, double t) {
  if (!(t >= 0)) throw DomainError("time must be nonnegative");
  BlochControls c = controls_unit(p.ratio(), p.small_gamma * t);
  c.omega0 *= p.small_gamma;
  c.omega_c *= p.small_gamma;
  return c;
}

double omega0_integral(const BlochParams& p, double eps, int intervals) {
  if (!(eps > 0)) throw DomainError("integration window must be positive");
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double t0 = p.t0();
  eps = std::min(eps, t0);
  // t = t0 - s^2 removes the inverse square root at t0
  const double top = std::sqrt(eps), h = top / intervals;
  auto f = [&](double s) {
    if (s <= 0.0) {
      const double s1 = 1e-9 * top;
      return 2.0 * s1 * std::abs(optimal_controls(p, t0 - s1 * s1).omega0);
    }
    return 2.0 * s * std::abs(optimal_controls(p, t0 - s * s).omega0);
  };
  double sum = f(0.0) + f(top);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

GroupElement bloch_rotation(double phi) { return rotation2(phi - 0.5 * M_PI); }

double angle_rate(const KElement& k) {
  if (k.left.rows() != 2 || k.left.cols() != 2) throw ShapeError("expected an so(2) element");
  return k.left(1, 0).real();
}

}  // namespace redctl
