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

#include "redctl/fields.hpp"

#include <cmath>
#include <iostream>
#include <mutex>

namespace redctl {

// ---------------------------------------------------------------- drift fields

DriftField DriftField::affine(Mat matrix, Vec offset) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != offset.size())
    throw ShapeError("affine drift needs a square matrix matching the offset length");
  DriftField f;
  f.kind_ = DriftKind::Affine;
  f.matrix_ = std::move(matrix);
  f.offset_ = std::move(offset);
  return f;
}

DriftField DriftField::bloch(double g, double l) {
  if (!(g >= 0) || !(l >= 0) || !std::isfinite(g) || !std::isfinite(l))
    throw DomainError("Bloch rates must be finite and nonnegative");
  DriftField f;
  f.kind_ = DriftKind::Bloch;
  f.bloch_g_ = g;
  f.bloch_l_ = l;
  f.matrix_ = Mat::Zero(2, 2);
  f.matrix_(0, 0) = -g;
  f.matrix_(1, 1) = -l;
  f.offset_ = Vec::Zero(2);
  f.offset_(1) = l;
  return f;
}

DriftField DriftField::custom(std::function<PPoint(const PPoint&)> evaluator,
                              std::optional<double> lipschitz) {
  DriftField f;
  f.kind_ = DriftKind::Custom;
  f.eval_ = std::move(evaluator);
  f.lipschitz_ = lipschitz;
  if (!lipschitz) {
    static std::once_flag warned;
    std::call_once(warned, [] {
      std::clog << "warning: custom drift without a Lipschitz bound, assuming 1e3\n";
    });
  }
  return f;
}

DriftField DriftField::scaled_identity(const PairDescriptor& pair, double s) {
  const int d = pair.ambient_dim();
  return affine(s * Mat::Identity(d, d), Vec::Zero(d));
}

void DriftField::check_pair(const PairDescriptor& pair) const {
  if (kind_ == DriftKind::Bloch &&
      !(pair.kind() == PairKind::PolarDec && pair.n() == 2))
    throw DomainError("the Bloch drift is defined on polar(2) only");
  if (kind_ == DriftKind::Affine && matrix_.rows() != pair.ambient_dim())
    throw ShapeError("affine drift dimension does not match " + pair.name());
}

PPoint DriftField::operator()(const PairDescriptor& pair, const PPoint& x) const {
  if (kind_ == DriftKind::Custom) return eval_(x);
  check_pair(pair);
  return from_ambient(pair, matrix_ * ambient_coords(pair, x) + offset_);
}

const Mat& DriftField::matrix() const {
  if (kind_ == DriftKind::Custom) throw DomainError("custom drift has no affine form");
  return matrix_;
}

const Vec& DriftField::offset() const {
  if (kind_ == DriftKind::Custom) throw DomainError("custom drift has no affine form");
  return offset_;
}

double DriftField::lipschitz(const PairDescriptor& pair) const {
  if (kind_ == DriftKind::Custom) return lipschitz_.value_or(1e3);
  check_pair(pair);
  Eigen::JacobiSVD<Mat> svd(matrix_);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double DriftField::growth_c1(const PairDescriptor& pair) const { return lipschitz(pair); }

double DriftField::growth_c2(const PairDescriptor& pair) const {
  if (kind_ == DriftKind::Custom) return norm(eval_(zero_point(pair)));
  check_pair(pair);
  return offset_.norm();
}

// ---------------------------------------------------------------- induced fields

APoint induced_field(const PairDescriptor& pair, const DriftField& x, const GroupElement& k,
                     const APoint& a) {
  const PPoint p = adjoint_action(pair, k, embed(pair, a));
  return project_abelian(pair, adjoint_inverse(pair, k, x(pair, p)));
}

InducedAffine induced_affine(const PairDescriptor& pair, const DriftField& x,
                             const GroupElement& k) {
  if (!x.is_affine()) throw DomainError("induced_affine requires an affine drift");
  const int r = pair.coord_dim();
  InducedAffine out;
  out.off = induced_field(pair, x, k, APoint::Zero(r));
  out.mat.resize(r, r);
  for (int j = 0; j < r; ++j) {
    APoint e = APoint::Zero(r);
    e(j) = 1.0;
    out.mat.col(j) = induced_field(pair, x, k, e) - out.off;
  }
  return out;
}

GroupElement rotation2(double angle) {
  CMat r(2, 2);
  const double c = std::cos(angle), s = std::sin(angle);
  r << c, -s, s, c;
  return {r, CMat::Identity(1, 1)};
}

std::vector<GroupElement> sample_group(const PairDescriptor& pair, const KSource& src) {
  if (src.count < 1) throw DomainError("sample count must be positive");
  std::vector<GroupElement> out;
  out.reserve(src.count);
  if (src.kind == KSource::Kind::AngleGrid) {
    if (!(pair.kind() == PairKind::PolarDec && pair.n() == 2))
      throw DomainError("angle grids are available for polar(2) only");
    for (int i = 0; i < src.count; ++i) out.push_back(rotation2(2.0 * M_PI * i / src.count));
  } else {
    for (int i = 0; i < src.count; ++i) out.push_back(haar_sample(pair, stream_seed(src.seed, i)));
  }
  return out;
}

Mat DervSample::values() const {
  Mat m(a.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.col(i) = entries[i].v;
  return m;
}

DervSample derv_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       const KSource& src, bool with_hull) {
  DervSample s;
  s.a = a;
  for (GroupElement& k : sample_group(pair, src)) {
    APoint v = induced_field(pair, x, k, a);
    s.entries.push_back({std::move(k), std::move(v)});
  }
  if (with_hull) {
    const Mat vals = s.values();
    if (affine_dimension(vals) <= 3) s.hull = convex_hull(vals);
  }
  return s;
}

DervSample derv_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       int n_samples, std::uint64_t seed, bool with_hull) {
  return derv_sample(pair, x, a, KSource::haar(n_samples, seed), with_hull);
}

DervSample derv_strict_filter(const PairDescriptor& pair, const DriftField& x,
                              const DervSample& sample, double tol) {
  DervSample out;
  out.a = sample.a;
  if (sample.entries.empty()) return out;
  const PPoint base = embed(pair, sample.a);
  for (const DervEntry& e : sample.entries) {
    const PPoint p = adjoint_action(pair, e.k, base);
    const PPoint y = adjoint_inverse(pair, e.k, x(pair, p));
    const PPoint z = project_commutant(pair, base, y);
    const PPoint za = embed(pair, project_abelian(pair, z));
    if ((z.m - za.m).norm() <= tol) out.entries.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- ascent

AscentResult group_ascent(const PairDescriptor& pair,
                          const std::function<double(const GroupElement&)>& f,
                          const GroupElement& start, int max_iter) {
  const auto& basis = pair.k_basis();
  const int dim = static_cast<int>(basis.size());
  AscentResult res{start, f(start), 0};
  if (dim == 0) return res;
  const double h = 1e-6;
  std::vector<GroupElement> plus(dim), minus(dim);
  for (int i = 0; i < dim; ++i) {
    plus[i] = exp_k(pair, scale(basis[i], h));
    minus[i] = exp_k(pair, scale(basis[i], -h));
  }
  double radius = 0.5;
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    Vec g(dim);
    for (int i = 0; i < dim; ++i)
      g(i) = (f(compose(res.k, plus[i])) - f(compose(res.k, minus[i]))) / (2 * h);
    const double gn = g.norm();
    if (!(gn > 1e-12)) break;
    bool improved = false;
    double step = radius;
    for (int ls = 0; ls < 40; ++ls) {
      const GroupElement cand = compose(res.k, exp_k(pair, from_k_coords(pair, g * (step / gn))));
      const double v = f(cand);
      if (v > res.value) {
        res.k = cand;
        res.value = v;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    radius = std::min(1.0, 2.0 * step);
  }
  return res;
}

SpeedLimit speed_limit(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       int n_restarts, std::uint64_t seed) {
  if (n_restarts < 1) throw DomainError("speed_limit needs at least one restart");
  auto f = [&](const GroupElement& k) { return induced_field(pair, x, k, a).norm(); };
  SpeedLimit best{-1.0, identity_element(pair)};
  const bool grid = pair.kind() == PairKind::PolarDec && pair.n() == 2 && x.is_affine();
  if (grid) {
    const Polar2Affine pa = polar2_affine(pair, x);
    for (double s : {1.0, -1.0}) {
      const double t = pa.argmax(a(0), s, 4096, 3);
      const double v = std::abs(pa.value(t, a(0)));
      if (v > best.value) best = {v, rotation2(t)};
    }
  }
  constexpr int kPerRestart = 16;
  for (int r = 0; r < n_restarts; ++r) {
    GroupElement start = identity_element(pair);
    double sv = -1.0;
    for (int j = 0; j < kPerRestart; ++j) {
      GroupElement k = haar_sample(pair, stream_seed(seed, r * kPerRestart + j));
      const double v = f(k);
      if (v > sv) sv = v, start = k;
    }
    const AscentResult ar = group_ascent(pair, f, start);
    if (ar.value > best.value) best = {ar.value, ar.k};
  }
  return best;
}

DervEntry support_point(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                        const Vec& d, const GroupElement& start) {
  auto f = [&](const GroupElement& k) { return d.dot(induced_field(pair, x, k, a)); };
  const AscentResult ar = group_ascent(pair, f, start, 100);
  return {ar.k, induced_field(pair, x, ar.k, a)};
}

// ---------------------------------------------------------------- polar(2) closed form

namespace {
Eigen::Vector2d axis_dir(double t) { return {-std::sin(t), std::cos(t)}; }
Eigen::Vector2d axis_dir1(double t) { return {-std::cos(t), -std::sin(t)}; }
}  // namespace

double Polar2Affine::value(double t, double a) const {
  const Eigen::Vector2d u = axis_dir(t);
  return a * u.dot(m * u) + u.dot(b);
}

double Polar2Affine::d1(double t, double a) const {
  const Eigen::Vector2d u = axis_dir(t), u1 = axis_dir1(t);
  const Mat s = m + m.transpose();
  return a * u1.dot(s * u) + u1.dot(b);
}

double Polar2Affine::d2(double t, double a) const {
  const Eigen::Vector2d u = axis_dir(t), u1 = axis_dir1(t);
  const Mat s = m + m.transpose();
  return a * (-u.dot(s * u) + u1.dot(s * u1)) - u.dot(b);
}

double Polar2Affine::argmax(double a, double s, int grid, int newton_steps) const {
  if (static_cast<int>(quad_.size()) != grid) {
    quad_.resize(grid);
    lin_.resize(grid);
    for (int i = 0; i < grid; ++i) {
      const Eigen::Vector2d u = axis_dir(2.0 * M_PI * i / grid);
      quad_[i] = u.dot(m * u);
      lin_[i] = u.dot(b);
    }
  }
  int best = 0;
  double bv = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = s * (a * quad_[i] + lin_[i]);
    if (v > bv) bv = v, best = i;
  }
  bv = s * value(2.0 * M_PI * best / grid, a);
  double t = 2.0 * M_PI * best / grid;
  for (int it = 0; it < newton_steps; ++it) {
    const double h2 = s * d2(t, a);
    if (!(h2 < 0)) break;
    const double tn = t - d1(t, a) / d2(t, a);
    const double vn = s * value(tn, a);
    if (!(vn >= bv)) break;
    t = tn;
    bv = vn;
  }
  return t;
}

Polar2Affine polar2_affine(const PairDescriptor& pair, const DriftField& x) {
  if (!(pair.kind() == PairKind::PolarDec && pair.n() == 2) || !x.is_affine())
    throw DomainError("closed-form angle evaluation needs polar(2) with an affine drift");
  Polar2Affine pa;
  pa.m = x.matrix();
  pa.b = x.offset();
  return pa;
}

}  // namespace redctl
