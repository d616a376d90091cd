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
#include "redctl/dynamics.hpp"

using namespace redctl;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

PPoint polar_point(double y, double z) {
  PPoint p{CMat::Zero(2, 1)};
  p.m(0, 0) = y;
  p.m(1, 0) = z;
  return p;
}

}  // namespace

TEST_CASE("time nodes") {
  const auto t = time_nodes(1.0, 0.3);
  REQUIRE(t.size() == 5);
  CHECK(t.back() == 1.0);
  CHECK(time_nodes(0.0, 0.1).size() == 1);
}

TEST_CASE("full system without drift or controls stays put") {
  const auto pair = PairDescriptor::hermitian_evd(2);
  const DriftField zero = DriftField::scaled_identity(pair, 0.0);
  FullControls fc;
  const PPoint p0 = embed(pair, vec({0.5, -0.5}));
  const FullTrajectory tr = integrate_full(pair, zero, fc, p0, 1.0, 0.1);
  for (const PPoint& p : tr.p) CHECK((p.m - p0.m).norm() < 1e-15);
}

TEST_CASE("constant control follows the adjoint orbit") {
  const auto pair = PairDescriptor::hermitian_evd(3);
  const DriftField zero = DriftField::scaled_identity(pair, 0.0);
  const KElement k = from_k_coords(pair, Vec::LinSpaced(pair.k_dim(), 0.3, -0.4));
  FullControls fc;
  fc.directions = {k};
  fc.grid = {0.0, 1.0};
  fc.values = Mat::Ones(1, 1);
  const PPoint p0 = embed(pair, vec({1.0, 0.2, -1.2}));
  const FullTrajectory tr = integrate_full(pair, zero, fc, p0, 1.0, 1e-3);
  const PPoint exact = adjoint_action(pair, exp_k(pair, k), p0);
  CHECK((tr.p.back().m - exact.m).norm() < 1e-8);
}

TEST_CASE("free bloch relaxation approaches the north pole") {
  const auto pair = PairDescriptor::polar(2);
  const DriftField x = DriftField::bloch(3.0, 1.0);
  const FullTrajectory tr = integrate_full(pair, x, FullControls{}, polar_point(0, 0), 3.0, 1e-3);
  double prev = -1.0;
  bool monotone = true;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double z = tr.p[i].m(1, 0).real();
    monotone = monotone && z > prev;
    prev = z;
    CHECK(std::abs(z - (1.0 - std::exp(-tr.t[i]))) < 1e-8);
  }
  CHECK(monotone);
}

TEST_CASE("reduced system under the negative identity") {
  const auto pair = PairDescriptor::real_svd(3, 2);
  const DriftField x = DriftField::scaled_identity(pair, -1.0);
  ReducedControls sc;
  sc.grid = {0.0, 0.5};
  sc.k = {haar_sample(pair, 1), haar_sample(pair, 2)};
  const Vec a0 = vec({0.8, 0.3});
  const Trajectory tr = integrate_reduced(pair, x, sc, a0, 1.0, 1e-3);
  CHECK((tr.a.back() - std::exp(-1.0) * a0).norm() < 1e-8);

  for (Selector sel : {Selector::envelope_max(), Selector::random(),
                       Selector::greedy_max_inner(vec({1.0, 0.0}))}) {
    const Trajectory ti = integrate_inclusion(pair, x, sel, a0, 1.0, 1e-3, 4);
    CHECK((ti.a.back() - std::exp(-1.0) * a0).norm() < 1e-6);
  }

  const Trajectory single = integrate_reduced(pair, x, ReducedControls{}, a0, 0.0, 0.1);
  REQUIRE(single.a.size() == 1);
  CHECK((single.a[0] - a0).norm() == 0.0);
}

TEST_CASE("identity frame reproduces the affine flow") {
  const auto pair = PairDescriptor::hermitian_evd(2);
  const int m = pair.ambient_dim();
  const Vec d = ambient_coords(pair, embed(pair, vec({1.0, -1.0})));
  const DriftField x = DriftField::affine(-Mat::Identity(m, m), d);
  ReducedControls sc;
  sc.grid = {0.0};
  sc.k = {identity_element(pair)};
  const Vec a0 = vec({-0.5, 0.5});
  const Trajectory tr = integrate_reduced(pair, x, sc, a0, 2.0, 1e-3);
  const Vec target = vec({1.0, -1.0});
  const Vec exact = target + std::exp(-2.0) * (a0 - target);
  CHECK((tr.a.back() - exact).norm() < 1e-8);
}

TEST_CASE("uniform weyl mixture at the origin is a fixed point") {
  const auto pair = PairDescriptor::hermitian_evd(3);
  const int m = pair.ambient_dim();
  const Vec off = ambient_coords(pair, embed(pair, vec({2.0, 0.5, -2.5})));
  const DriftField x = DriftField::affine(-Mat::Identity(m, m), off);
  const std::vector<double> w(6, 1.0 / 6.0);
  const Trajectory tr =
      integrate_inclusion(pair, x, Selector::convex_mix(w), Vec::Zero(3), 1.0, 1e-2, 0);
  for (const APoint& a : tr.a) CHECK(a.norm() < 1e-12);
}

TEST_CASE("envelope selector tracks the optimal bloch path") {
  const auto pair = PairDescriptor::polar(2);
  const BlochParams p = BlochParams::make(3.0);
  const Trajectory tr = integrate_inclusion(pair, bloch_drift(p), Selector::envelope_max(),
                                            vec({-1.0}), 1.0, 1e-3, 0);
  double err = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    err = std::max(err, std::abs(tr.a[i](0) - optimal_a_star(p, tr.t[i])));
  CHECK(err < 2e-3);
}

TEST_CASE("inclusion runs are deterministic per seed") {
  const auto pair = PairDescriptor::hermitian_evd(3);
  const int m = pair.ambient_dim();
  const DriftField x = DriftField::affine(-Mat::Identity(m, m), Vec::LinSpaced(m, 0.2, -0.3));
  const Vec a0 = vec({1.0, 0.0, -1.0});
  const Trajectory t1 = integrate_inclusion(pair, x, Selector::random(), a0, 0.5, 1e-2, 9);
  const Trajectory t2 = integrate_inclusion(pair, x, Selector::random(), a0, 0.5, 1e-2, 9);
  for (std::size_t i = 0; i < t1.a.size(); ++i) CHECK((t1.a[i] - t2.a[i]).norm() == 0.0);
  CHECK(path_length(t1) > 0.0);
}

TEST_CASE("invalid integration arguments") {
  const auto pair = PairDescriptor::polar(2);
  const DriftField x = DriftField::bloch(3.0);
  CHECK_THROWS_AS(integrate_full(pair, x, FullControls{}, polar_point(0, 0), 1.0, -1.0),
                  DomainError);
  CHECK_THROWS_AS(integrate_reduced(pair, x, ReducedControls{}, vec({0.1, 0.2}), 1.0, 0.1),
                  ShapeError);
}
