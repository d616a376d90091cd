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
#include "redctl/fields.hpp"

using namespace redctl;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Affine drift p -> D - p on hermitian_evd(n) with D = diag(d) (traceless d).
DriftField relax_to(const PairDescriptor& pair, const Vec& d) {
  const int m = pair.ambient_dim();
  return DriftField::affine(-Mat::Identity(m, m), ambient_coords(pair, embed(pair, d)));
}

bool schur_horn(const Vec& d, const Vec& x, double tol) {
  Vec ds = d, xs = x;
  std::sort(ds.data(), ds.data() + ds.size(), std::greater<>());
  std::sort(xs.data(), xs.data() + xs.size(), std::greater<>());
  double sd = 0, sx = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    sd += ds(i);
    sx += xs(i);
    if (sx > sd + tol) return false;
  }
  return std::abs(sx - sd) <= tol;
}

}  // namespace

TEST_CASE("induced field of the negative identity") {
  for (const auto& pair : {PairDescriptor::hermitian_evd(3), PairDescriptor::real_svd(3, 2),
                           PairDescriptor::polar(3)}) {
    const DriftField x = DriftField::scaled_identity(pair, -1.0);
    Vec a = Vec::LinSpaced(pair.coord_dim(), 1.0, -0.5);
    if (pair.kind() == PairKind::HermitianEVD) a.array() -= a.mean();
    a = chamber_fold(pair, a).a;
    for (std::uint64_t s = 0; s < 5; ++s)
      CHECK((induced_field(pair, x, haar_sample(pair, s), a) + a).norm() < 1e-12);
    const DervSample ds = derv_sample(pair, x, a, 32, 1);
    for (const DervEntry& e : ds.entries) CHECK((e.v + a).norm() < 1e-12);
    CHECK(speed_limit(pair, x, a, 4, 2).value == doctest::Approx(a.norm()).epsilon(1e-9));
  }
}

TEST_CASE("bloch induced field matches the trigonometric form") {
  const auto pair = PairDescriptor::polar(2);
  const DriftField x = DriftField::bloch(3.0, 1.0);
  for (double phi : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
    for (double a : {-0.8, 0.0, 0.4}) {
      const double c = std::cos(phi);
      const double expect = 2.0 * a * c * c + c - 3.0 * a;
      CHECK(induced_field(pair, x, rotation2(phi), vec({a}))(0) == doctest::Approx(expect));
    }
  }
  const DervSample grid = derv_sample(pair, x, vec({0.0}), KSource::angle_grid(4096));
  const Mat v = grid.values();
  CHECK(v.maxCoeff() == doctest::Approx(1.0));
  CHECK(v.minCoeff() == doctest::Approx(-1.0));
  CHECK(speed_limit(pair, x, vec({0.0}), 2, 0).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("identity frame of an affine relaxation") {
  const auto pair = PairDescriptor::hermitian_evd(2);
  const DriftField x = relax_to(pair, vec({1, -1}));
  const Vec a = vec({0.3, -0.3});
  CHECK((induced_field(pair, x, identity_element(pair), a) - (vec({1, -1}) - a)).norm() < 1e-12);
  const InducedAffine ia = induced_affine(pair, x, haar_sample(pair, 4));
  CHECK((ia(a) - induced_field(pair, x, haar_sample(pair, 4), a)).norm() < 1e-12);
}

TEST_CASE("derv samples satisfy the diagonal partial sums") {
  const auto pair = PairDescriptor::hermitian_evd(3);
  const Vec d = vec({2.0, 0.5, -2.5});
  const DriftField x = relax_to(pair, d);
  const Vec a = vec({0.4, 0.1, -0.5});
  const DervSample ds = derv_sample(pair, x, a, 500, 9);
  int bad = 0;
  for (const DervEntry& e : ds.entries) bad += schur_horn(d, e.v + a, 1e-10) ? 0 : 1;
  CHECK(bad == 0);
}

TEST_CASE("strict filter") {
  const auto pair = PairDescriptor::hermitian_evd(2);
  const DriftField x = relax_to(pair, vec({1, -1}));
  const DervSample regular = derv_sample(pair, x, vec({0.5, -0.5}), 40, 3);
  CHECK(derv_strict_filter(pair, x, regular, 1e-9).entries.size() == regular.entries.size());

  // At a = 0 the drift is the constant D; only frames diagonalizing D keep X in a.
  std::vector<GroupElement> ks = sample_group(pair, KSource::haar(60, 5));
  ks.push_back(identity_element(pair));
  DervSample s0;
  s0.a = vec({0, 0});
  for (const auto& k : ks) s0.entries.push_back({k, induced_field(pair, x, k, s0.a)});
  const DervSample kept = derv_strict_filter(pair, x, s0, 1e-9);
  REQUIRE(!kept.entries.empty());
  for (const DervEntry& e : kept.entries) {
    const CMat g = e.k.left;
    CHECK(std::abs(std::abs(g(0, 0) * g(0, 1))) < 1e-6);
  }
  CHECK(derv_strict_filter(pair, x, DervSample{}, 1e-9).entries.empty());
}

TEST_CASE("speed limit vanishes for linear fields at the origin") {
  const auto pair = PairDescriptor::real_svd(3, 2);
  const int m = pair.ambient_dim();
  const DriftField x = DriftField::affine(Mat::Identity(m, m) * 0.7, Vec::Zero(m));
  CHECK(speed_limit(pair, x, Vec::Zero(2), 2, 1).value == 0.0);
}

TEST_CASE("weyl equivariance of induced fields") {
  const auto pair = PairDescriptor::real_svd(3, 2);
  Rng rng(17);
  std::normal_distribution<double> g(0.0, 0.4);
  const int m = pair.ambient_dim();
  Mat mat(m, m);
  Vec off(m);
  for (int i = 0; i < m; ++i) {
    off(i) = g(rng);
    for (int j = 0; j < m; ++j) mat(i, j) = g(rng);
  }
  const DriftField x = DriftField::affine(mat, off);
  const Vec a = vec({0.9, 0.2});
  const GroupElement k = haar_sample(pair, rng);
  for (const WeylElement& w : weyl_elements(pair)) {
    const GroupElement kn = compose(k, weyl_representative(pair, w));
    const Vec lhs = induced_field(pair, x, kn, a);
    const Vec rhs = w.inverse().apply(induced_field(pair, x, k, w.apply(a)));
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("drift validation") {
  const auto evd = PairDescriptor::hermitian_evd(3);
  CHECK_THROWS_AS(DriftField::bloch(3.0)(evd, zero_point(evd)), Error);
  const DriftField bad = DriftField::affine(Mat::Identity(2, 2), Vec::Zero(2));
  CHECK_THROWS_AS(bad(evd, zero_point(evd)), ShapeError);
}
