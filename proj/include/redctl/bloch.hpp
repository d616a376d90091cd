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

#pragma once

#include "redctl/fields.hpp"

namespace redctl {

// Dissipative two-level system X(y, z) = (-Gamma y, -gamma (z - 1)) on the unit disk,
// reduced along the z-axis of polar(2).
//
// Angle convention: the disk point at radius a and angle phi is a (cos phi, sin phi), so
// phi = pi/2 is the positive z-axis and the group element is rotation2(phi - pi/2).
struct BlochParams {
  double big_gamma = 3.0;
  double small_gamma = 1.0;

  static BlochParams make(double big_gamma, double small_gamma = 1.0);

  double ratio() const { return big_gamma / small_gamma; }  // Gamma at gamma = 1
  double a0() const;
  double t0() const;
  double eta() const;
  double delta(double t) const;
};

DriftField bloch_drift(const BlochParams& p);

double envelope_u(const BlochParams& p, double a);
double optimal_a_star(const BlochParams& p, double t);
// Angle realizing the envelope at radius a.
double optimal_phi(const BlochParams& p, double a);

struct BlochControls {
  double omega0 = 0.0;   // d/dt of the optimal angle
  double omega_c = 0.0;  // compensating rotation rate
};
BlochControls optimal_controls(const BlochParams& p, double t);

// Numerical value of the integral of |omega0| over [t0 - eps, t0).
double omega0_integral(const BlochParams& p, double eps, int intervals = 2000);

GroupElement bloch_rotation(double phi);
// Rotation rate of an so(2) element in the orientation of rotation2.
double angle_rate(const KElement& k);

}  // namespace redctl
