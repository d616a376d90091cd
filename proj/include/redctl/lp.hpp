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

#include <vector>

#include "redctl/linalg.hpp"

namespace redctl {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vec x;
};

// minimize c^T x  s.t.  a_ub x <= b_ub,  a_eq x = b_eq,  x_j >= 0 unless free[j].
// Dense two-phase simplex; empty matrices are allowed for absent constraint blocks.
struct LpProblem {
  Vec c;
  Mat a_ub;
  Vec b_ub;
  Mat a_eq;
  Vec b_eq;
  std::vector<bool> free;  // optional, size = c.size()
};

LpResult solve_lp(const LpProblem& problem, double tol = 1e-10, int max_iter = 20000);

struct HullDistance {
  double distance = 0.0;  // l1 distance from the query to the hull
  Vec weights;            // convex weights over the points
  Vec closest;            // sum of weights * points
};

// l1 distance from y to conv(columns of points).
HullDistance hull_distance(const Mat& points, const Vec& y);

// l1 distance from v to the cone generated by the columns of generators.
HullDistance cone_distance(const Mat& generators, const Vec& v);

}  // namespace redctl
