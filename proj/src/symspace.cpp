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

#include "redctl/symspace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace redctl {

struct PairDescriptor::Data {
  PairKind kind = PairKind::HermitianEVD;
  int n = 0, p = 0, q = 0;
  int rank = 0, coord_dim = 0, ambient_dim = 0, k_dim = 0;
  int left_dim = 0, right_dim = 0, rows = 0, cols = 0;
  std::uint64_t weyl_order = 0;
  ChamberData chamber;
  std::vector<CMat> p_basis;
  std::vector<KElement> k_basis;
  Mat abelian_basis;

  std::once_flag weyl_once;
  std::vector<WeylElement> weyl;
};

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Vec unit(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1.0;
  return v;
}

// Orthonormal basis of the sum-zero subspace of R^n (generalized Gell-Mann diagonals).
Mat sum_zero_basis(int n) {
  Mat b = Mat::Zero(n, n - 1);
  for (int l = 1; l < n; ++l) {
    const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) b(j, l - 1) = s;
    b(l, l - 1) = -l * s;
  }
  return b;
}

CMat real_block(int rows, int cols, int i, int j, double v) {
  CMat m = CMat::Zero(rows, cols);
  m(i, j) = v;
  return m;
}

CMat skew_unit(int dim, int i, int j) {
  CMat m = CMat::Zero(dim, dim);
  m(i, j) = 1.0 / std::sqrt(2.0);
  m(j, i) = -1.0 / std::sqrt(2.0);
  return m;
}

void fill_signed_chamber(ChamberData& c, int r) {
  for (int i = 0; i + 1 < r; ++i) c.simple_roots.push_back(unit(r, i) - unit(r, i + 1));
  c.simple_roots.push_back(unit(r, r - 1));
  for (int i = 0; i < r; ++i) {
    Vec w = Vec::Zero(r);
    w.head(i + 1).setOnes();
    c.weights.push_back(w);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      c.positive_roots.push_back(unit(r, i) - unit(r, j));
      c.positive_roots.push_back(unit(r, i) + unit(r, j));
    }
    c.positive_roots.push_back(unit(r, i));
  }
}

CMat unrealify(const Vec& v, int rows, int cols) {
  const Eigen::Index m = static_cast<Eigen::Index>(rows) * cols;
  CMat x(rows, cols);
  Eigen::Index idx = 0;
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      x(i, j) = cplx(v(idx), v(m + idx));
      ++idx;
    }
  return x;
}

Mat ad_matrix(const PairDescriptor& pair, const PPoint& x) {
  const auto& kb = pair.k_basis();
  Mat a(2 * x.m.size(), kb.size());
  for (std::size_t i = 0; i < kb.size(); ++i) a.col(i) = realify(ad_bracket(pair, kb[i], x).m);
  return a;
}

void check_shape(const PairDescriptor& pair, const PPoint& x) {
  if (x.m.rows() != pair.rows() || x.m.cols() != pair.cols()) {
    std::ostringstream os;
    os << "point shape " << x.m.rows() << "x" << x.m.cols() << " does not match " << pair.name();
    throw ShapeError(os.str());
  }
}

void check_shape(const PairDescriptor& pair, const GroupElement& k) {
  if (k.left.rows() != pair.left_dim() || k.left.cols() != pair.left_dim() ||
      k.right.rows() != pair.right_dim() || k.right.cols() != pair.right_dim())
    throw ShapeError("group element shape does not match " + pair.name());
}

void check_shape(const PairDescriptor& pair, const KElement& k) {
  if (k.left.rows() != pair.left_dim() || k.left.cols() != pair.left_dim() ||
      k.right.rows() != pair.right_dim() || k.right.cols() != pair.right_dim())
    throw ShapeError("algebra element shape does not match " + pair.name());
}

void check_coords(const PairDescriptor& pair, const APoint& a) {
  if (a.size() != pair.coord_dim()) {
    std::ostringstream os;
    os << "reduced point has " << a.size() << " coordinates, " << pair.name() << " expects "
       << pair.coord_dim();
    throw ShapeError(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- descriptor

PairDescriptor PairDescriptor::hermitian_evd(int n) {
  if (n < 2) throw ShapeError("hermitian_evd needs n >= 2");
  if (n > 20) throw CapacityError("hermitian_evd supports n <= 20");
  PairDescriptor pd;
  pd.d_ = std::make_shared<Data>();
  Data& d = *pd.d_;
  d.kind = PairKind::HermitianEVD;
  d.n = n;
  d.rank = n - 1;
  d.coord_dim = n;
  d.ambient_dim = n * n - 1;
  d.k_dim = n * n - 1;
  d.left_dim = d.right_dim = n;
  d.rows = d.cols = n;
  d.weyl_order = factorial(n);

  const Mat h = sum_zero_basis(n);
  for (int l = 0; l < n - 1; ++l) d.p_basis.push_back(h.col(l).cast<cplx>().asDiagonal());
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat re = CMat::Zero(n, n), im = CMat::Zero(n, n);
      re(i, j) = re(j, i) = s;
      im(i, j) = cplx(0, s);
      im(j, i) = cplx(0, -s);
      d.p_basis.push_back(re);
      d.p_basis.push_back(im);
    }
  for (const CMat& b : d.p_basis) {
    CMat k = cplx(0, 1) * b;
    d.k_basis.push_back({k, k});
  }
  d.abelian_basis = h;

  ChamberData& c = d.chamber;
  for (int i = 0; i + 1 < n; ++i) c.simple_roots.push_back(unit(n, i) - unit(n, i + 1));
  for (int i = 0; i + 1 < n; ++i) {
    Vec w = Vec::Constant(n, -static_cast<double>(i + 1) / n);
    w.head(i + 1).array() += 1.0;
    c.weights.push_back(w);
  }
  c.invariant_directions.push_back(Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.positive_roots.push_back(unit(n, i) - unit(n, j));
  return pd;
}

PairDescriptor PairDescriptor::real_svd(int p, int q) {
  if (p < 1 || q < 1) throw ShapeError("real_svd needs p, q >= 1");
  if (std::min(p, q) > 16) throw CapacityError("real_svd supports min(p, q) <= 16");
  PairDescriptor pd;
  pd.d_ = std::make_shared<Data>();
  Data& d = *pd.d_;
  d.kind = PairKind::RealSVD;
  d.p = p;
  d.q = q;
  d.rank = std::min(p, q);
  d.coord_dim = d.rank;
  d.ambient_dim = p * q;
  d.k_dim = p * (p - 1) / 2 + q * (q - 1) / 2;
  d.left_dim = p;
  d.right_dim = q;
  d.rows = p;
  d.cols = q;
  d.weyl_order = (std::uint64_t{1} << d.rank) * factorial(d.rank);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) d.p_basis.push_back(real_block(p, q, i, j, 1.0));
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) d.k_basis.push_back({skew_unit(p, i, j), CMat::Zero(q, q)});
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) d.k_basis.push_back({CMat::Zero(p, p), skew_unit(q, i, j)});
  d.abelian_basis = Mat::Identity(d.rank, d.rank);
  fill_signed_chamber(d.chamber, d.rank);
  return pd;
}

PairDescriptor PairDescriptor::polar(int n) {
  if (n < 2) throw ShapeError("polar needs n >= 2");
  PairDescriptor pd;
  pd.d_ = std::make_shared<Data>();
  Data& d = *pd.d_;
  d.kind = PairKind::PolarDec;
  d.n = n;
  d.rank = 1;
  d.coord_dim = 1;
  d.ambient_dim = n;
  d.k_dim = n * (n - 1) / 2;
  d.left_dim = n;
  d.right_dim = 1;
  d.rows = n;
  d.cols = 1;
  d.weyl_order = 2;
  for (int i = 0; i < n; ++i) d.p_basis.push_back(real_block(n, 1, i, 0, 1.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.k_basis.push_back({skew_unit(n, i, j), CMat::Zero(1, 1)});
  d.abelian_basis = Mat::Identity(1, 1);
  fill_signed_chamber(d.chamber, 1);
  return pd;
}

PairKind PairDescriptor::kind() const { return d_->kind; }
int PairDescriptor::n() const { return d_->n; }
int PairDescriptor::p() const { return d_->p; }
int PairDescriptor::q() const { return d_->q; }
int PairDescriptor::rank() const { return d_->rank; }
int PairDescriptor::coord_dim() const { return d_->coord_dim; }
int PairDescriptor::ambient_dim() const { return d_->ambient_dim; }
int PairDescriptor::k_dim() const { return d_->k_dim; }
int PairDescriptor::left_dim() const { return d_->left_dim; }
int PairDescriptor::right_dim() const { return d_->right_dim; }
int PairDescriptor::rows() const { return d_->rows; }
int PairDescriptor::cols() const { return d_->cols; }
std::uint64_t PairDescriptor::weyl_order() const { return d_->weyl_order; }
const ChamberData& PairDescriptor::chamber() const { return d_->chamber; }
const std::vector<CMat>& PairDescriptor::p_basis() const { return d_->p_basis; }
const std::vector<KElement>& PairDescriptor::k_basis() const { return d_->k_basis; }
const Mat& PairDescriptor::abelian_basis() const { return d_->abelian_basis; }

std::string PairDescriptor::name() const {
  std::ostringstream os;
  switch (d_->kind) {
    case PairKind::HermitianEVD: os << "hermitian_evd(" << d_->n << ")"; break;
    case PairKind::RealSVD: os << "real_svd(" << d_->p << "," << d_->q << ")"; break;
    case PairKind::PolarDec: os << "polar(" << d_->n << ")"; break;
  }
  return os.str();
}

bool PairDescriptor::same_as(const PairDescriptor& o) const {
  return d_->kind == o.d_->kind && d_->n == o.d_->n && d_->p == o.d_->p && d_->q == o.d_->q;
}

// ---------------------------------------------------------------- Weyl elements

Vec WeylElement::apply(const Vec& a) const {
  Vec out(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out(i) = sign[i] * a(perm[i]);
  return out;
}

Mat WeylElement::matrix() const {
  const int r = static_cast<int>(perm.size());
  Mat m = Mat::Zero(r, r);
  for (int i = 0; i < r; ++i) m(i, perm[i]) = sign[i];
  return m;
}

WeylElement WeylElement::compose(const WeylElement& o) const {
  WeylElement w;
  const std::size_t r = perm.size();
  w.perm.resize(r);
  w.sign.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    w.perm[i] = o.perm[perm[i]];
    w.sign[i] = sign[i] * o.sign[perm[i]];
  }
  return w;
}

WeylElement WeylElement::inverse() const {
  WeylElement w;
  const std::size_t r = perm.size();
  w.perm.resize(r);
  w.sign.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    w.perm[perm[i]] = static_cast<int>(i);
    w.sign[perm[i]] = sign[i];
  }
  return w;
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || sign[i] != 1) return false;
  return true;
}

WeylElement weyl_identity(const PairDescriptor& pair) {
  WeylElement w;
  w.perm.resize(pair.coord_dim());
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(pair.coord_dim(), 1);
  return w;
}

const std::vector<WeylElement>& weyl_elements(const PairDescriptor& pair, std::uint64_t cap) {
  if (pair.weyl_order() > cap) {
    std::ostringstream os;
    os << "Weyl group of " << pair.name() << " has " << pair.weyl_order()
       << " elements, above the cap " << cap;
    throw CapacityError(os.str());
  }
  auto& d = const_cast<PairDescriptor::Data&>(pair.data());
  std::call_once(d.weyl_once, [&] {
    const int r = pair.coord_dim();
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    const bool signed_group = pair.kind() != PairKind::HermitianEVD;
    do {
      const int masks = signed_group ? (1 << r) : 1;
      for (int mask = 0; mask < masks; ++mask) {
        WeylElement w;
        w.perm = perm;
        w.sign.resize(r);
        for (int i = 0; i < r; ++i) w.sign[i] = (mask >> i) & 1 ? -1 : 1;
        d.weyl.push_back(std::move(w));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return d.weyl;
}

Fold chamber_fold(const PairDescriptor& pair, const APoint& a) {
  check_coords(pair, a);
  const int r = pair.coord_dim();
  Fold f;
  f.w.perm.resize(r);
  f.w.sign.assign(r, 1);
  std::iota(f.w.perm.begin(), f.w.perm.end(), 0);
  if (pair.kind() == PairKind::HermitianEVD) {
    std::stable_sort(f.w.perm.begin(), f.w.perm.end(), [&](int i, int j) { return a(i) > a(j); });
  } else {
    std::stable_sort(f.w.perm.begin(), f.w.perm.end(),
                     [&](int i, int j) { return std::abs(a(i)) > std::abs(a(j)); });
    for (int i = 0; i < r; ++i) f.w.sign[i] = a(f.w.perm[i]) < 0 ? -1 : 1;
  }
  f.a = f.w.apply(a);
  return f;
}

bool in_chamber(const PairDescriptor& pair, const APoint& a, double tol) {
  for (const Vec& alpha : pair.chamber().simple_roots)
    if (alpha.dot(a) < -tol) return false;
  return true;
}

GroupElement weyl_representative(const PairDescriptor& pair, const WeylElement& w) {
  switch (pair.kind()) {
    case PairKind::HermitianEVD: {
      const int n = pair.n();
      CMat pm = CMat::Zero(n, n);
      for (int i = 0; i < n; ++i) pm(i, w.perm[i]) = 1.0;
      if (pm.real().determinant() < 0) pm *= std::polar(1.0, M_PI / n);
      return {pm, pm};
    }
    case PairKind::RealSVD: {
      const int r = pair.rank();
      CMat v = CMat::Identity(pair.p(), pair.p());
      CMat u = CMat::Identity(pair.q(), pair.q());
      v.topLeftCorner(r, r).setZero();
      u.topLeftCorner(r, r).setZero();
      for (int i = 0; i < r; ++i) {
        v(i, w.perm[i]) = static_cast<double>(w.sign[i]);
        u(i, w.perm[i]) = 1.0;
      }
      return {v, u};
    }
    case PairKind::PolarDec: {
      CMat v = CMat::Identity(pair.n(), pair.n());
      if (w.sign[0] < 0) {
        v(0, 0) = -1.0;
        v(pair.n() - 1, pair.n() - 1) = -1.0;
      }
      return {v, CMat::Identity(1, 1)};
    }
  }
  return identity_element(pair);
}

std::vector<WeylElement> weyl_stabilizer(const PairDescriptor& pair, const APoint& x, double tol) {
  std::vector<WeylElement> out;
  for (const WeylElement& w : weyl_elements(pair))
    if ((w.apply(x) - x).lpNorm<Eigen::Infinity>() <= tol) out.push_back(w);
  return out;
}

std::vector<double> root_values(const PairDescriptor& pair, const APoint& a) {
  check_coords(pair, a);
  std::vector<double> v;
  for (const Vec& alpha : pair.chamber().positive_roots) v.push_back(alpha.dot(a));
  return v;
}

double regularity_margin(const PairDescriptor& pair, const APoint& a) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : root_values(pair, a)) m = std::min(m, std::abs(v));
  return m;
}

double default_tol_reg(const APoint& a) {
  return 1e-8 * std::max(1.0, a.size() ? a.lpNorm<Eigen::Infinity>() : 0.0);
}

// ---------------------------------------------------------------- points

PPoint zero_point(const PairDescriptor& pair) { return {CMat::Zero(pair.rows(), pair.cols())}; }

PPoint embed(const PairDescriptor& pair, const APoint& a) {
  check_coords(pair, a);
  PPoint x = zero_point(pair);
  switch (pair.kind()) {
    case PairKind::HermitianEVD:
    case PairKind::RealSVD:
      for (int i = 0; i < pair.coord_dim(); ++i) x.m(i, i) = a(i);
      break;
    case PairKind::PolarDec: x.m(pair.n() - 1, 0) = a(0); break;
  }
  return x;
}

APoint project_abelian(const PairDescriptor& pair, const PPoint& x) {
  check_shape(pair, x);
  APoint a(pair.coord_dim());
  switch (pair.kind()) {
    case PairKind::HermitianEVD:
    case PairKind::RealSVD:
      for (int i = 0; i < pair.coord_dim(); ++i) a(i) = x.m(i, i).real();
      break;
    case PairKind::PolarDec: a(0) = x.m(pair.n() - 1, 0).real(); break;
  }
  return a;
}

Vec ambient_coords(const PairDescriptor& pair, const PPoint& x) {
  check_shape(pair, x);
  const auto& b = pair.p_basis();
  Vec c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c(i) = frob_inner(b[i], x.m);
  return c;
}

PPoint from_ambient(const PairDescriptor& pair, const Vec& c) {
  const auto& b = pair.p_basis();
  if (c.size() != static_cast<Eigen::Index>(b.size()))
    throw ShapeError("ambient coordinate vector has wrong length for " + pair.name());
  PPoint x = zero_point(pair);
  for (std::size_t i = 0; i < b.size(); ++i) x.m += c(i) * b[i];
  return x;
}

double inner(const PPoint& x, const PPoint& y) { return frob_inner(x.m, y.m); }
double norm(const PPoint& x) { return x.m.norm(); }

double point_residual(const PairDescriptor& pair, const PPoint& x) {
  check_shape(pair, x);
  if (pair.kind() == PairKind::HermitianEVD) return (x.m - x.m.adjoint()).norm();
  return x.m.imag().norm();
}

void check_point(const PairDescriptor& pair, const PPoint& x) {
  const double res = point_residual(pair, x);
  if (!(res <= 1e-12 * std::max(1.0, norm(x))))
    throw DomainError("point violates the representation constraints of " + pair.name());
}

// ---------------------------------------------------------------- group and algebra

GroupElement identity_element(const PairDescriptor& pair) {
  return {CMat::Identity(pair.left_dim(), pair.left_dim()),
          CMat::Identity(pair.right_dim(), pair.right_dim())};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return {a.left * b.left, a.right * b.right};
}

GroupElement inverse(const GroupElement& k) { return {k.left.adjoint(), k.right.adjoint()}; }

KElement zero_k(const PairDescriptor& pair) {
  return {CMat::Zero(pair.left_dim(), pair.left_dim()),
          CMat::Zero(pair.right_dim(), pair.right_dim())};
}

KElement scale(const KElement& k, double s) { return {s * k.left, s * k.right}; }
KElement add(const KElement& a, const KElement& b) { return {a.left + b.left, a.right + b.right}; }

namespace {
double k_inner(const PairDescriptor& pair, const KElement& a, const KElement& b) {
  double s = frob_inner(a.left, b.left);
  if (pair.kind() == PairKind::RealSVD) s += frob_inner(a.right, b.right);
  return s;
}
}  // namespace

double k_norm(const KElement& k) { return std::sqrt(k.left.squaredNorm() + k.right.squaredNorm()); }

Vec k_coords(const PairDescriptor& pair, const KElement& k) {
  check_shape(pair, k);
  const auto& b = pair.k_basis();
  Vec c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c(i) = k_inner(pair, b[i], k);
  return c;
}

KElement from_k_coords(const PairDescriptor& pair, const Vec& c) {
  const auto& b = pair.k_basis();
  if (c.size() != static_cast<Eigen::Index>(b.size()))
    throw ShapeError("algebra coordinate vector has wrong length for " + pair.name());
  KElement k = zero_k(pair);
  for (std::size_t i = 0; i < b.size(); ++i) {
    k.left += c(i) * b[i].left;
    if (pair.kind() == PairKind::RealSVD) k.right += c(i) * b[i].right;
  }
  if (pair.kind() == PairKind::HermitianEVD) k.right = k.left;
  return k;
}

KElement project_k(const PairDescriptor& pair, const KElement& m) {
  check_shape(pair, m);
  KElement k;
  if (pair.kind() == PairKind::HermitianEVD) {
    CMat s = 0.5 * (m.left - m.left.adjoint());
    s -= (s.trace() / static_cast<double>(pair.n())) * CMat::Identity(pair.n(), pair.n());
    k.left = s;
    k.right = s;
  } else {
    Mat l = m.left.real();
    k.left = (0.5 * (l - l.transpose())).cast<cplx>();
    if (pair.kind() == PairKind::RealSVD) {
      Mat r = m.right.real();
      k.right = (0.5 * (r - r.transpose())).cast<cplx>();
    } else {
      k.right = CMat::Zero(1, 1);
    }
  }
  return k;
}

GroupElement exp_k(const PairDescriptor& pair, const KElement& k) {
  check_shape(pair, k);
  GroupElement g;
  g.left = expm_skew(k.left);
  if (pair.kind() == PairKind::HermitianEVD) {
    g.right = g.left;
  } else {
    g.left = g.left.real().cast<cplx>();
    g.right = pair.kind() == PairKind::RealSVD ? CMat(expm_skew(k.right).real().cast<cplx>())
                                               : CMat::Identity(1, 1);
  }
  return g;
}

KElement log_k(const PairDescriptor& pair, const GroupElement& g) {
  check_shape(pair, g);
  KElement k{logm_unitary(g.left), pair.kind() == PairKind::RealSVD ? logm_unitary(g.right)
                                                                    : CMat(g.right * 0.0)};
  if (pair.kind() == PairKind::HermitianEVD) k.right = k.left;
  return project_k(pair, k);
}

double group_residual(const PairDescriptor& pair, const GroupElement& k) {
  check_shape(pair, k);
  const int l = pair.left_dim(), r = pair.right_dim();
  double res = (k.left.adjoint() * k.left - CMat::Identity(l, l)).norm();
  res = std::max(res, (k.right.adjoint() * k.right - CMat::Identity(r, r)).norm());
  switch (pair.kind()) {
    case PairKind::HermitianEVD:
      res = std::max(res, std::abs(k.left.determinant() - 1.0));
      res = std::max(res, (k.left - k.right).norm());
      break;
    case PairKind::RealSVD:
      res = std::max(res, std::max(k.left.imag().norm(), k.right.imag().norm()));
      break;
    case PairKind::PolarDec:
      res = std::max(res, k.left.imag().norm());
      res = std::max(res, std::abs(k.left.real().determinant() - 1.0));
      res = std::max(res, std::abs(k.right(0, 0) - 1.0));
      break;
  }
  return res;
}

void check_group(const PairDescriptor& pair, const GroupElement& k) {
  if (!(group_residual(pair, k) <= 1e-10))
    throw DomainError("group element violates the constraints of " + pair.name());
}

PPoint adjoint_action(const PairDescriptor& pair, const GroupElement& k, const PPoint& x) {
  check_shape(pair, x);
  check_shape(pair, k);
  return {k.left * x.m * k.right.adjoint()};
}

PPoint adjoint_inverse(const PairDescriptor& pair, const GroupElement& k, const PPoint& x) {
  check_shape(pair, x);
  check_shape(pair, k);
  return {k.left.adjoint() * x.m * k.right};
}

PPoint ad_bracket(const PairDescriptor& pair, const KElement& k, const PPoint& x) {
  check_shape(pair, x);
  check_shape(pair, k);
  return {k.left * x.m - x.m * k.right};
}

PPoint project_commutant(const PairDescriptor& pair, const PPoint& x, const PPoint& y) {
  check_shape(pair, x);
  check_shape(pair, y);
  const Mat q = range_basis(ad_matrix(pair, x), 1e-10);
  if (q.cols() == 0) return y;
  const Vec yv = realify(y.m);
  return {unrealify(yv - q * (q.transpose() * yv), pair.rows(), pair.cols())};
}

// ---------------------------------------------------------------- diagonalization

Diagonalization diagonalize(const PairDescriptor& pair, const PPoint& x) {
  check_shape(pair, x);
  Diagonalization out;
  switch (pair.kind()) {
    case PairKind::HermitianEVD: {
      const int n = pair.n();
      CMat h = 0.5 * (x.m + x.m.adjoint());
      Eigen::SelfAdjointEigenSolver<CMat> es(h);
      out.a.resize(n);
      CMat u(n, n);
      for (int i = 0; i < n; ++i) {
        out.a(i) = es.eigenvalues()(n - 1 - i);
        u.col(i) = es.eigenvectors().col(n - 1 - i);
      }
      const cplx det = u.determinant();
      u *= std::polar(1.0, -std::arg(det) / n);
      out.k = {u, u};
      break;
    }
    case PairKind::RealSVD: {
      Eigen::JacobiSVD<Mat> svd(x.m.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      out.a = svd.singularValues();
      out.k = {svd.matrixU().cast<cplx>(), svd.matrixV().cast<cplx>()};
      break;
    }
    case PairKind::PolarDec: {
      const int n = pair.n();
      const Vec v = x.m.col(0).real();
      const double r = v.norm();
      out.a = APoint::Constant(1, r);
      Mat q = Mat::Identity(n, n);
      if (r > 0) {
        Vec w = -v / r;
        w(n - 1) += 1.0;
        const double w2 = w.squaredNorm();
        if (w2 > 1e-30) {
          q -= 2.0 * w * w.transpose() / w2;
          q.col(0) *= -1.0;
        }
      }
      out.k = {q.cast<cplx>(), CMat::Identity(1, 1)};
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- sampling

GroupElement haar_sample(const PairDescriptor& pair, Rng& rng) {
  switch (pair.kind()) {
    case PairKind::HermitianEVD: {
      CMat u = haar_unitary(pair.n(), rng);
      u *= std::polar(1.0, -std::arg(u.determinant()) / pair.n());
      return {u, u};
    }
    case PairKind::RealSVD:
      return {haar_orthogonal(pair.p(), rng).cast<cplx>(),
              haar_orthogonal(pair.q(), rng).cast<cplx>()};
    case PairKind::PolarDec: {
      Mat o = haar_orthogonal(pair.n(), rng);
      if (o.determinant() < 0) o.col(0) *= -1.0;
      return {o.cast<cplx>(), CMat::Identity(1, 1)};
    }
  }
  return identity_element(pair);
}

GroupElement haar_sample(const PairDescriptor& pair, std::uint64_t seed) {
  Rng rng(seed);
  return haar_sample(pair, rng);
}

// ---------------------------------------------------------------- ad inverse

KElement ad_inverse_restricted(const PairDescriptor& pair, const PPoint& p, const PPoint& y,
                               double tol_reg) {
  check_shape(pair, p);
  check_shape(pair, y);
  const double ynorm = norm(y);
  if (ynorm == 0.0) return zero_k(pair);
  const APoint a = diagonalize(pair, p).a;
  const double tol = tol_reg < 0 ? default_tol_reg(a) : tol_reg;
  const double margin = regularity_margin(pair, a);
  if (!(margin > tol)) {
    std::ostringstream os;
    os << "ad inverse requested at a point with regularity margin " << margin << " <= " << tol;
    throw SingularityError(os.str());
  }
  const double along = norm(project_commutant(pair, p, y));
  if (along > 1e-8 * ynorm + 1e-13)
    throw DomainError("right-hand side has a component in the commutant of p");
  const Mat a_mat = ad_matrix(pair, p);
  const Vec c = min_norm_solve(a_mat, realify(y.m), 1e-10);
  KElement k = from_k_coords(pair, c);
  const double res = norm({ad_bracket(pair, k, p).m - y.m});
  if (res > 1e-8 * ynorm + 1e-13)
    throw DomainError("ad inverse residual above tolerance");
  return k;
}

}  // namespace redctl
