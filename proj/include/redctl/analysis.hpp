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
#include <vector>

#include "redctl/dynamics.hpp"
#include "redctl/hull.hpp"
#include "redctl/lp.hpp"

namespace redctl {

// ---- Weyl polytopes and majorization

struct WeylPolytope {
  APoint base;
  std::vector<APoint> vertices;        // deduplicated orbit of base
  std::vector<WeylElement> elements;   // elements[i].apply(base) == vertices[i]
  std::optional<Hull> hull;            // facet description when the orbit spans at most 3 dims

  Mat vertex_matrix() const;  // coord_dim x vertices
};

WeylPolytope weyl_polytope(const PairDescriptor& pair, const APoint& a);

struct MajorizationCheck {
  bool lp = false;                // ground truth: b in conv(W a)
  std::optional<bool> fast;       // sorted partial-sum test when the pair admits one
  double lp_distance = 0.0;       // l1 distance from b to P(a)
  double slack = 0.0;             // >= 0 inside, -lp_distance outside
};

MajorizationCheck majorization_check(const PairDescriptor& pair, const APoint& a, const APoint& b,
                                     double tol = 1e-9);
// b in P(a); uses the partial-sum test when available, the LP otherwise.
bool majorizes(const PairDescriptor& pair, const APoint& a, const APoint& b, double tol = 1e-9);
bool majorizes_lp(const PairDescriptor& pair, const APoint& a, const APoint& b,
                  double tol = 1e-9);
std::optional<bool> majorizes_fast(const PairDescriptor& pair, const APoint& a, const APoint& b,
                                   double tol = 1e-9);

// Polyhedral cone {v : normals v <= 0, equalities v = 0} = cone(generators).
struct ConeData {
  Mat generators;  // columns
  Mat normals;     // rows; empty when no closed form is known
  Mat equalities;  // rows
  bool closed_form = false;

  bool contains(const Vec& v, double tol) const;     // facet test (closed form only)
  bool contains_lp(const Vec& v, double tol) const;  // generator test by LP
};

// Tangent cone of P(a) at the vertex with the given index. Regular vertices use the
// chamber data mapped by the vertex's Weyl element; others fall back to the LP cone.
ConeData tangent_cone_at_vertex(const PairDescriptor& pair, const WeylPolytope& poly,
                                std::size_t vertex, double tol_reg = -1.0);

struct FaceDecomposition {
  std::vector<std::size_t> indices;  // vertices of the minimal face containing x
  std::vector<double> weights;       // relative-interior convex weights over indices
  double residual = 0.0;
};

FaceDecomposition face_decompose(const PairDescriptor& pair, const WeylPolytope& poly,
                                 const APoint& x, double tol = 1e-9);

// ---- simulation of a dominated trajectory

struct SimulationDirection {
  APoint v;                     // in conv(derv(x))
  APoint v_folded;              // v moved by the stabilizer of x toward the chamber
  WeylElement fold;             // stabilizer element used for v_folded
  double certificate = 0.0;     // distance of the velocity defect from the face span
  FaceDecomposition face;
};

SimulationDirection simulation_direction(const PairDescriptor& pair, const DriftField& x,
                                         const APoint& xb, const APoint& a,
                                         const StepDecomposition& dec, double tol = 1e-8);

struct DominatingOptions {
  double slack_tol = 1e-6;
  double face_tol = 1e-9;
  int fallback_rounds = 8;
};

struct DominatingResult {
  Trajectory b;
  std::vector<double> slack;  // majorization slack of a(t) in P(b(t)) per node
  double min_slack = 0.0;
  bool ok = true;
  std::optional<std::size_t> first_violation;
  int fallback_steps = 0;
};

DominatingResult simulate_dominating(const PairDescriptor& pair, const DriftField& x,
                                     const Trajectory& a, const APoint& b0,
                                     const DominatingOptions& opts = {});

// ---- reachability and qualitative tests

struct ReachOptions {
  double dt = 1e-2;
  int segments_max = 4;
  Scheme scheme = Scheme::Heun;
};

struct ReachCloud {
  Mat points;  // coord_dim x n_traj terminal states
  Vec lower, upper;
  std::optional<Hull> hull;
};

ReachCloud reach_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a0,
                        double T, int n_traj, std::uint64_t seed, const ReachOptions& opts = {});

struct StabilizableReport {
  bool strong = false;
  bool weak = false;
  double min_norm = 0.0;       // smallest |X_K(a)| found
  double weak_distance = 0.0;  // l1 distance from 0 to conv of samples
  double tol = 0.0;
};

// tol < 0 selects 1e-6 * (c(a) + 1) with c(a) estimated from the samples.
StabilizableReport stabilizable_test(const PairDescriptor& pair, const DriftField& x,
                                     const APoint& a, int n_samples, double tol = -1.0,
                                     std::uint64_t seed = 0);

struct InvarianceReport {
  bool invariant = false;
  double max_radial = 0.0;  // max <v, a> over sampled boundary a and v in derv(a)
  APoint worst;
};

InvarianceReport invariance_test(const PairDescriptor& pair, const DriftField& x, double radius,
                                 int n_boundary, double tol = 1e-8, std::uint64_t seed = 0);

struct AccessibilityReport {
  bool accessible = false;
  double min_singular = 0.0;
};

AccessibilityReport direct_accessibility_test(const PairDescriptor& pair, const DriftField& x,
                                              const APoint& a, int n_samples, double tol = 1e-8,
                                              std::uint64_t seed = 0);

}  // namespace redctl
