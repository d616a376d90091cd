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

#include <optional>
#include <utility>
#include <vector>

#include "redctl/dynamics.hpp"

namespace redctl {

// Node-wise diagonalization into the closed chamber.
Trajectory project_trajectory(const PairDescriptor& pair, const FullTrajectory& traj);

struct ResidualOptions {
  int n_samples = 256;
  std::uint64_t seed = 0;
  double tol = 1e-3;
  int refine_rounds = 6;  // support-point column generation when a node misses the sampled hull
};

struct ResidualReport {
  std::vector<double> distance;  // per node; NaN at the two endpoints
  std::vector<bool> within;      // per interior node
  double fraction_within = 0.0;
  double max_distance = 0.0;
  double tol = 0.0;
};

// Distance of central finite-difference derivatives to conv(derv(a)) at interior nodes.
ResidualReport projection_residual(const PairDescriptor& pair, const DriftField& x,
                                   const Trajectory& traj, const ResidualOptions& opts = {});

struct LiftOptions {
  double tol_reg = -1.0;  // negative: default_tol_reg(a) per node
  bool reintegrate = true;
};

struct LiftResult {
  std::vector<double> t;
  std::vector<PPoint> p;               // Ad_{K(t)}(embed(a(t)))
  std::vector<KElement> induced;       // K'K^{-1}
  std::vector<KElement> compensating;  // ad_p^{-1} of the orbital drift component (zero if excised)
  std::vector<bool> excised;
  std::vector<std::pair<double, double>> excised_intervals;
  std::vector<double> singular_times;
  double excised_measure = 0.0;
  std::vector<PPoint> p_integrated;    // solution of the full system under the lifted controls
  double deviation = 0.0;              // sup_n ||p_n - p_integrated_n||
  std::optional<double> bound;         // Gronwall bound when growth constants are known
  std::optional<double> blowup_exponent;  // fitted exponent of ||compensating|| near singular times
};

LiftResult regular_lift(const PairDescriptor& pair, const DriftField& x, const Trajectory& traj,
                        const ReducedControls& schedule, const LiftOptions& opts = {});

LiftResult approximate_lift(const PairDescriptor& pair, const DriftField& x,
                            const Trajectory& traj, const ReducedControls& schedule, double eps,
                            const LiftOptions& opts = {});

// Compensating control at p: the minimal-norm k with [k, p] = -(orbital part of X(p)).
KElement compensating_control(const PairDescriptor& pair, const DriftField& x, const PPoint& p,
                              double tol_reg = -1.0);

// K'(t_n) K(t_n)^{-1} from three-point differences of the sampled path.
std::vector<KElement> induced_controls(const PairDescriptor& pair, const std::vector<double>& t,
                                       const std::vector<GroupElement>& k);

// Re-integrates the full system over the node grid; on each interval the control is
// log(K_{n+1} K_n^{-1}) / h plus the average of the compensating node values.
std::vector<PPoint> reintegrate_lift(const PairDescriptor& pair, const DriftField& x,
                                     const std::vector<double>& t,
                                     const std::vector<GroupElement>& k,
                                     const std::vector<KElement>& compensating, const PPoint& p0);

}  // namespace redctl
