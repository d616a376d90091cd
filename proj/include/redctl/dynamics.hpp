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
#include <string>
#include <vector>

#include "redctl/fields.hpp"

namespace redctl {

// Controls u_i(t) for the full system p' = X(p) + sum_i u_i(t) [k_i, p].
struct FullControls {
  enum class Hold { Constant, Linear };
  std::vector<double> grid;
  std::vector<KElement> directions;
  Mat values;  // Constant: one row per interval; Linear: one row per node
  Hold hold = Hold::Constant;

  Vec at(double t) const;
};

// Group-valued schedule K(t) for the reduced system, sampled at the grid nodes.
// Constant hold uses K[j] on [grid[j], grid[j+1]); Geodesic interpolates along
// K[j] exp(s log(K[j]^{-1} K[j+1])).
struct ReducedControls {
  enum class Hold { Constant, Geodesic };
  std::vector<double> grid;
  std::vector<GroupElement> k;
  Hold hold = Hold::Constant;
};

// Convex decomposition of the velocity used on one step: sum_j mu_j X_{K_j}(a).
struct StepDecomposition {
  std::vector<double> mu;
  std::vector<GroupElement> k;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<APoint> a;
  std::vector<StepDecomposition> steps;  // one per interval when recorded
  double dt = 0.0;
  std::string method;
};

struct FullTrajectory {
  std::vector<double> t;
  std::vector<PPoint> p;
  double dt = 0.0;
  std::string method;
};

struct Selector {
  enum class Kind { GreedyMaxInner, EnvelopeMax, ConvexMix, Random };
  Kind kind = Kind::EnvelopeMax;
  Vec direction;                                   // GreedyMaxInner
  std::vector<std::pair<double, Vec>> segments;    // optional direction switches (start time, d)
  std::vector<double> weights;                     // ConvexMix: one weight per Weyl element
  std::optional<KSource> source;                   // candidate pool; default per pair
  int newton_steps = 3;                            // polar(2) angle refinement

  static Selector greedy_max_inner(Vec d);
  static Selector envelope_max();
  static Selector convex_mix(std::vector<double> w);
  static Selector random();
};

enum class Scheme { Euler, Heun };

// Time nodes 0, dt, 2dt, ..., T (last step shortened when T is not a multiple of dt).
std::vector<double> time_nodes(double T, double dt);

FullTrajectory integrate_full(const PairDescriptor& pair, const DriftField& x,
                              const FullControls& controls, const PPoint& p0, double T,
                              double dt);

Trajectory integrate_reduced(const PairDescriptor& pair, const DriftField& x,
                             const ReducedControls& controls, const APoint& a0, double T,
                             double dt);

Trajectory integrate_inclusion(const PairDescriptor& pair, const DriftField& x,
                               const Selector& selector, const APoint& a0, double T, double dt,
                               std::uint64_t seed, Scheme scheme = Scheme::Heun);

// Default candidate pool: 4096-point angle grid on polar(2), 256 Haar draws otherwise.
KSource default_source(const PairDescriptor& pair, std::uint64_t seed);

// Group element of a reduced schedule at time t.
GroupElement schedule_at(const PairDescriptor& pair, const ReducedControls& c, double t);

// Polyline length sum ||a_{n+1} - a_n||.
double path_length(const Trajectory& traj);

}  // namespace redctl
