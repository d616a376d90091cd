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

#include "redctl/analysis.hpp"
#include "redctl/bloch.hpp"

using namespace redctl;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

DriftField relax_to(const PairDescriptor& pair, const Vec& d) {
  const int m = pair.ambient_dim();
  return DriftField::affine(-Mat::Identity(m, m), ambient_coords(pair, embed(pair, d)));
}

DriftField random_affine(const PairDescriptor& pair, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, 0.3);
  const int m = pair.ambient_dim();
  Mat mat = -Mat::Identity(m, m);
  Vec off(m);
  for (int i = 0; i < m; ++i) {
    off(i) = g(rng);
    for (int j = 0; j < m; ++j) mat(i, j) += g(rng);
  }
  return DriftField::affine(mat, off);
}

}  // namespace

TEST_CASE("majorization examples") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  CHECK(majorizes(evd3, vec({1, 0, -1}), vec({0.5, 0, -0.5})));
  CHECK(majorizes_lp(evd3, vec({1, 0, -1}), vec({0.5, 0, -0.5})));
  CHECK(majorizes(evd3, vec({1, 0, -1}), vec({1, 0, -1})));
  const auto evd2 = PairDescriptor::hermitian_evd(2);
  CHECK_FALSE(majorizes(evd2, vec({1, -1}), vec({2, -2})));
  CHECK_FALSE(majorizes_lp(evd2, vec({1, -1}), vec({2, -2})));
  const MajorizationCheck c = majorization_check(evd2, vec({1, -1}), vec({2, -2}));
  CHECK(c.lp_distance > 0.5);
  CHECK(c.slack < 0.0);

  const auto svd = PairDescriptor::real_svd(3, 2);
  CHECK(majorizes(svd, vec({2, 1}), vec({-1.5, 0.5})));
  CHECK_FALSE(majorizes(svd, vec({2, 1}), vec({2.5, 0})));
}

TEST_CASE("fast path agrees with the linear program") {
  for (const auto& pair : {PairDescriptor::hermitian_evd(4), PairDescriptor::real_svd(4, 3)}) {
    Rng rng(3);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
      Vec a(pair.coord_dim()), b(pair.coord_dim());
      for (Eigen::Index j = 0; j < a.size(); ++j) a(j) = g(rng), b(j) = 0.6 * g(rng);
      if (pair.kind() == PairKind::HermitianEVD) {
        a.array() -= a.mean();
        b.array() -= b.mean();
      }
      const auto fast = majorizes_fast(pair, a, b);
      REQUIRE(fast);
      CHECK(*fast == majorizes_lp(pair, a, b));
    }
  }
}

TEST_CASE("weyl polytopes and tangent cones") {
  const auto evd2 = PairDescriptor::hermitian_evd(2);
  const WeylPolytope seg = weyl_polytope(evd2, vec({1, -1}));
  REQUIRE(seg.vertices.size() == 2);
  std::size_t top = (seg.vertices[0](0) > 0) ? 0 : 1;
  const ConeData cone = tangent_cone_at_vertex(evd2, seg, top);
  CHECK(cone.contains(vec({-1, 1}), 1e-12));
  CHECK_FALSE(cone.contains(vec({1, -1}), 1e-12));
  CHECK_FALSE(cone.contains(vec({1, 1}), 1e-12));

  const auto polar = PairDescriptor::polar(2);
  const WeylPolytope iv = weyl_polytope(polar, vec({2}));
  REQUIRE(iv.vertices.size() == 2);
  const std::size_t plus = iv.vertices[0](0) > 0 ? 0 : 1;
  const ConeData half = tangent_cone_at_vertex(polar, iv, plus);
  CHECK(half.contains(vec({-3}), 1e-12));
  CHECK_FALSE(half.contains(vec({0.1}), 1e-12));

  const auto evd3 = PairDescriptor::hermitian_evd(3);
  const WeylPolytope hex = weyl_polytope(evd3, vec({2, 0.3, -2.3}));
  REQUIRE(hex.vertices.size() == 6);
  Rng rng(21);
  std::normal_distribution<double> g;
  const Mat basis = evd3.abelian_basis();
  for (std::size_t v = 0; v < hex.vertices.size(); ++v) {
    const ConeData cv = tangent_cone_at_vertex(evd3, hex, v);
    REQUIRE(cv.closed_form);
    for (int i = 0; i < 100; ++i) {
      const Vec probe = basis * Vec::NullaryExpr(basis.cols(), [&] { return g(rng); });
      CHECK(cv.contains(probe, 1e-10) == cv.contains_lp(probe, 1e-10));
    }
  }
}

TEST_CASE("face decomposition") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  const WeylPolytope hex = weyl_polytope(evd3, vec({2, 0.5, -2.5}));
  const FaceDecomposition v = face_decompose(evd3, hex, hex.vertices[2]);
  REQUIRE(v.indices.size() == 1);
  CHECK(v.indices[0] == 2);
  CHECK(v.weights[0] == doctest::Approx(1.0));

  const FaceDecomposition c = face_decompose(evd3, hex, Vec::Zero(3));
  CHECK(c.indices.size() == 6);
  for (double w : c.weights) CHECK(w > 0.0);

  // Midpoint of the edge between (2, 0.5, -2.5) and (0.5, 2, -2.5).
  const Vec mid = vec({1.25, 1.25, -2.5});
  const FaceDecomposition e = face_decompose(evd3, hex, mid);
  REQUIRE(e.indices.size() == 2);
  CHECK(e.weights[0] == doctest::Approx(0.5));
  CHECK(e.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("simulation direction") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  const DriftField x = random_affine(evd3, 4);
  const Vec a = vec({1.0, 0.2, -1.2});
  StepDecomposition dec;
  dec.mu = {0.4, 0.6};
  dec.k = {haar_sample(evd3, 1), haar_sample(evd3, 2)};
  Vec adot = Vec::Zero(3);
  for (std::size_t j = 0; j < dec.mu.size(); ++j)
    adot += dec.mu[j] * induced_field(evd3, x, dec.k[j], a);
  const SimulationDirection same = simulation_direction(evd3, x, a, a, dec);
  CHECK((same.v - adot).norm() < 1e-10);
  CHECK(same.certificate < 1e-10);

  const auto evd2 = PairDescriptor::hermitian_evd(2);
  const DriftField neg = DriftField::scaled_identity(evd2, -1.0);
  StepDecomposition d2;
  d2.mu = {1.0};
  d2.k = {haar_sample(evd2, 3)};
  const SimulationDirection s2 =
      simulation_direction(evd2, neg, vec({1.5, -1.5}), vec({0.5, -0.5}), d2);
  CHECK((s2.v - vec({-1.5, 1.5})).norm() < 1e-10);
  CHECK(s2.certificate < 1e-10);

  int failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(stream_seed(77, seed));
    std::normal_distribution<double> g;
    Vec b(3);
    for (int i = 0; i < 3; ++i) b(i) = g(rng);
    b = chamber_fold(evd3, (b.array() - b.mean()).matrix()).a;
    const WeylPolytope poly = weyl_polytope(evd3, b);
    Vec w = Vec::NullaryExpr(6, [&] { return std::exp(g(rng)); });
    w /= w.sum();
    const Vec inside = chamber_fold(evd3, poly.vertex_matrix() * w).a;
    const DriftField xr = random_affine(evd3, seed);
    StepDecomposition dr;
    dr.mu = {1.0};
    dr.k = {haar_sample(evd3, rng)};
    failures += simulation_direction(evd3, xr, b, inside, dr).certificate < 1e-8 ? 0 : 1;
  }
  CHECK(failures == 0);
}

TEST_CASE("dominating trajectories") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  const DriftField x = relax_to(evd3, vec({2.0, 0.5, -2.5}));
  const Vec a0 = vec({0.8, 0.1, -0.9});
  const Trajectory a = integrate_inclusion(evd3, x, Selector::random(), a0, 1.0, 1e-2, 2);

  const DominatingResult same = simulate_dominating(evd3, x, a, a0);
  CHECK(same.ok);
  for (std::size_t i = 0; i < a.t.size(); ++i)
    CHECK((same.b.a[i] - chamber_fold(evd3, a.a[i]).a).norm() < 1e-6);

  const DominatingResult dom = simulate_dominating(evd3, x, a, vec({1.5, 0.2, -1.7}));
  CHECK(dom.ok);
  CHECK(dom.min_slack >= -1e-6);

  const DriftField neg = DriftField::scaled_identity(evd3, -1.0);
  const Trajectory an = integrate_inclusion(evd3, neg, Selector::random(), a0, 1.0, 1e-2, 3);
  const Vec b0 = vec({1.5, 0.2, -1.7});
  const DominatingResult dn = simulate_dominating(evd3, neg, an, b0);
  CHECK(dn.ok);
  CHECK((dn.b.a.back() - std::exp(-1.0) * b0).norm() < 1e-4);
}

TEST_CASE("reachable sets") {
  const auto polar = PairDescriptor::polar(2);
  const BlochParams p = BlochParams::make(3.0);
  const ReachCloud zero = reach_sample(polar, bloch_drift(p), vec({-1.0}), 0.0, 8, 1);
  CHECK((zero.points.array() == -1.0).all());

  ReachOptions ro;
  ro.dt = 1e-3;
  const ReachCloud cloud = reach_sample(polar, bloch_drift(p), vec({-1.0}), 2.0, 32, 5, ro);
  const double best = optimal_a_star(p, 2.0);
  CHECK(cloud.points.minCoeff() >= -1.0 - 1e-9);
  CHECK(cloud.points.maxCoeff() <= best + 1e-9);
  CHECK(cloud.points.maxCoeff() >= best - 5e-3);

  const auto evd3 = PairDescriptor::hermitian_evd(3);
  const ReachCloud neg = reach_sample(evd3, DriftField::scaled_identity(evd3, -1.0),
                                      vec({1.0, 0.0, -1.0}), 1.0, 8, 2);
  for (Eigen::Index j = 0; j < neg.points.cols(); ++j)
    CHECK((neg.points.col(j) - std::exp(-1.0) * vec({1.0, 0.0, -1.0})).norm() < 1e-4);
}

TEST_CASE("stabilizability") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  CHECK(stabilizable_test(evd3, DriftField::scaled_identity(evd3, -1.0), Vec::Zero(3), 64)
            .strong);
  const auto polar = PairDescriptor::polar(2);
  const DriftField b = DriftField::bloch(3.0, 1.0);
  const StabilizableReport half = stabilizable_test(polar, b, vec({0.5}), 256);
  CHECK(half.weak);
  const StabilizableReport one = stabilizable_test(polar, b, vec({1.0}), 256);
  CHECK(one.strong);
  CHECK_FALSE(stabilizable_test(polar, DriftField::scaled_identity(polar, 1.0), vec({0.4}), 64).weak);
}

TEST_CASE("ball invariance") {
  const auto polar = PairDescriptor::polar(2);
  CHECK(invariance_test(polar, DriftField::bloch(3.0, 1.0), 1.0, 64).invariant);
  CHECK_FALSE(invariance_test(polar, DriftField::scaled_identity(polar, 1.0), 1.0, 64).invariant);
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  CHECK(invariance_test(evd3, DriftField::scaled_identity(evd3, -1.0), 2.0, 64).invariant);
}

TEST_CASE("direct accessibility") {
  const auto evd3 = PairDescriptor::hermitian_evd(3);
  CHECK(direct_accessibility_test(evd3, relax_to(evd3, vec({2.0, 0.5, -2.5})), Vec::Zero(3), 64)
            .accessible);
  CHECK_FALSE(
      direct_accessibility_test(evd3, DriftField::scaled_identity(evd3, -1.0), Vec::Zero(3), 64)
          .accessible);
  const auto polar = PairDescriptor::polar(2);
  CHECK(direct_accessibility_test(polar, DriftField::bloch(3.0, 1.0), vec({0.3}), 64).accessible);
}
