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

#include "redctl/errors.hpp"
#include "redctl/hull.hpp"
#include "redctl/lp.hpp"

using namespace redctl;

TEST_CASE("simplex on a small bounded program") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
  LpProblem p;
  p.c = Vec(2);
  p.c << -1, -1;
  p.a_ub = Mat(2, 2);
  p.a_ub << 1, 2, 3, 1;
  p.b_ub = Vec(2);
  p.b_ub << 4, 6;
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-2.8));
  CHECK(r.x(0) == doctest::Approx(1.6));
  CHECK(r.x(1) == doctest::Approx(1.2));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  LpProblem inf;
  inf.c = Vec::Ones(1);
  inf.a_eq = Mat::Ones(1, 1);
  inf.b_eq = Vec::Constant(1, -1.0);
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);

  LpProblem unb;
  unb.c = Vec::Constant(1, -1.0);
  unb.a_ub = Mat::Constant(1, 1, -1.0);
  unb.b_ub = Vec::Zero(1);
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);
}

TEST_CASE("free variables") {
  LpProblem p;
  p.c = Vec::Ones(1);
  p.a_ub = Mat::Constant(1, 1, -1.0);
  p.b_ub = Vec::Constant(1, 3.0);
  p.free = {true};
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(-3.0));
}

TEST_CASE("l1 hull distance") {
  Mat sq(2, 4);
  sq << 0, 1, 1, 0, 0, 0, 1, 1;
  Vec in(2), out(2);
  in << 0.3, 0.6;
  out << 2.0, 1.5;
  CHECK(hull_distance(sq, in).distance < 1e-12);
  const HullDistance h = hull_distance(sq, out);
  CHECK(h.distance == doctest::Approx(1.5));
  CHECK(std::abs(h.weights.sum() - 1.0) < 1e-12);
  CHECK(h.weights.minCoeff() >= -1e-12);

  Mat gens = Mat::Identity(2, 2);
  Vec v(2);
  v << -1.0, 2.0;
  CHECK(cone_distance(gens, v).distance == doctest::Approx(1.0));
}

TEST_CASE("convex hull in one, two and three dimensions") {
  Mat seg(2, 3);
  seg << 0, 1, 2, 0, 1, 2;
  const Hull h1 = convex_hull(seg);
  CHECK(h1.dim == 1);
  CHECK(h1.vertices.size() == 2);

  Mat sq(2, 5);
  sq << 0, 1, 1, 0, 0.5, 0, 0, 1, 1, 0.5;
  const Hull h2 = convex_hull(sq);
  CHECK(h2.dim == 2);
  CHECK(h2.vertices.size() == 4);
  Vec c(2), far(2);
  c << 0.5, 0.2;
  far << 2.0, 0.5;
  CHECK(h2.contains(c, 1e-12));
  CHECK_FALSE(h2.contains(far, 1e-12));
  CHECK(h2.distance(far) == doctest::Approx(1.0));

  Mat cube(3, 9);
  for (int i = 0; i < 8; ++i)
    cube.col(i) << (i & 1), ((i >> 1) & 1), ((i >> 2) & 1);
  cube.col(8) << 0.5, 0.5, 0.5;
  const Hull h3 = convex_hull(cube);
  CHECK(h3.dim == 3);
  CHECK(h3.vertices.size() == 8);
  CHECK(h3.contains(cube.col(8), 1e-12));

  Mat simplex4 = Mat::Identity(4, 4);
  Mat five(4, 5);
  five << simplex4, Vec::Zero(4);
  CHECK_THROWS_AS(convex_hull(five), CapacityError);
  CHECK(affine_dimension(five) == 4);
}
