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

#include "redctl/lp.hpp"

#include <cmath>
#include <limits>

#include "redctl/errors.hpp"

namespace redctl {

namespace {

class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b) : m_(a.rows()), n_(a.cols()) {
    t_ = Mat::Zero(m_ + 1, n_ + m_ + 1);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const double s = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = s * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, n_ + m_) = s * b(i);
      basis_[i] = n_ + i;
    }
  }

  // Phase 1 then phase 2; returns status and fills x.
  LpStatus solve(const Vec& c, double tol, int max_iter, Vec& x, double& obj) {
    const int cols = n_ + m_;
    Vec c1 = Vec::Zero(cols);
    c1.tail(m_).setOnes();
    set_costs(c1);
    LpStatus st = iterate(tol, max_iter, cols);
    if (st != LpStatus::Optimal) return st;
    double scale = 1.0;
    for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(t_(i, cols)));
    if (-t_(m_, cols) > 1e-9 * scale) return LpStatus::Infeasible;
    // drive artificials out of the basis
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int best = -1;
      double bv = 1e-9;
      for (int j = 0; j < n_; ++j)
        if (std::abs(t_(i, j)) > bv) {
          bv = std::abs(t_(i, j));
          best = j;
        }
      if (best >= 0) pivot(i, best);
    }
    Vec c2 = Vec::Zero(cols);
    c2.head(n_) = c;
    set_costs(c2);
    st = iterate(tol, max_iter, n_);
    if (st != LpStatus::Optimal) return st;
    x = Vec::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x(basis_[i]) = t_(i, cols);
    obj = c.dot(x);
    return LpStatus::Optimal;
  }

 private:
  void set_costs(const Vec& c) {
    const int cols = n_ + m_;
    t_.row(m_).setZero();
    t_.row(m_).head(cols) = c.transpose();
    for (int i = 0; i < m_; ++i) {
      const double cb = c(basis_[i]);
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void pivot(int r, int s) {
    t_.row(r) /= t_(r, s);
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, s);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = s;
  }

  // Columns >= allowed may not enter.
  LpStatus iterate(double tol, int max_iter, int allowed) {
    const int rhs = n_ + m_;
    int stall = 0;
    double last = t_(m_, rhs);
    for (int it = 0; it < max_iter; ++it) {
      const bool bland = stall > 50;
      int s = -1;
      double best = -tol;
      for (int j = 0; j < allowed; ++j) {
        const double d = t_(m_, j);
        if (d < best) {
          s = j;
          if (bland) break;
          best = d;
        }
      }
      if (s < 0) return LpStatus::Optimal;
      int r = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double v = t_(i, s);
        if (v > 1e-11) {
          const double q = t_(i, rhs) / v;
          if (q < ratio - 1e-14 || (q <= ratio + 1e-14 && r >= 0 && basis_[i] < basis_[r])) {
            ratio = q;
            r = i;
          }
        }
      }
      if (r < 0) return LpStatus::Unbounded;
      pivot(r, s);
      const double now = t_(m_, rhs);
      stall = std::abs(now - last) < 1e-14 ? stall + 1 : 0;
      last = now;
    }
    return LpStatus::IterationLimit;
  }

  int m_, n_;
  Mat t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LpProblem& pr, double tol, int max_iter) {
  const int nv = static_cast<int>(pr.c.size());
  const int mu = static_cast<int>(pr.a_ub.rows());
  const int me = static_cast<int>(pr.a_eq.rows());
  if ((mu > 0 && pr.a_ub.cols() != nv) || (me > 0 && pr.a_eq.cols() != nv) ||
      pr.b_ub.size() != mu || pr.b_eq.size() != me)
    throw ShapeError("inconsistent linear program dimensions");
  std::vector<int> neg_col(nv, -1);
  int ncols = nv;
  for (int j = 0; j < nv; ++j)
    if (!pr.free.empty() && pr.free[j]) neg_col[j] = ncols++;
  const int slack0 = ncols;
  ncols += mu;
  Mat a = Mat::Zero(mu + me, ncols);
  Vec b(mu + me);
  Vec c = Vec::Zero(ncols);
  for (int j = 0; j < nv; ++j) {
    c(j) = pr.c(j);
    if (neg_col[j] >= 0) c(neg_col[j]) = -pr.c(j);
  }
  for (int i = 0; i < mu; ++i) {
    for (int j = 0; j < nv; ++j) {
      a(i, j) = pr.a_ub(i, j);
      if (neg_col[j] >= 0) a(i, neg_col[j]) = -pr.a_ub(i, j);
    }
    a(i, slack0 + i) = 1.0;
    b(i) = pr.b_ub(i);
  }
  for (int i = 0; i < me; ++i) {
    for (int j = 0; j < nv; ++j) {
      a(mu + i, j) = pr.a_eq(i, j);
      if (neg_col[j] >= 0) a(mu + i, neg_col[j]) = -pr.a_eq(i, j);
    }
    b(mu + i) = pr.b_eq(i);
  }
  Tableau tab(a, b);
  Vec x;
  double obj = 0.0;
  LpResult res;
  res.status = tab.solve(c, tol, max_iter, x, obj);
  if (res.status == LpStatus::Optimal) {
    res.x = x.head(nv);
    for (int j = 0; j < nv; ++j)
      if (neg_col[j] >= 0) res.x(j) -= x(neg_col[j]);
    res.objective = pr.c.dot(res.x);
  }
  return res;
}

namespace {

HullDistance l1_fit(const Mat& points, const Vec& y, bool convex) {
  const int d = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  if (y.size() != d) throw ShapeError("query dimension does not match point dimension");
  HullDistance out;
  if (m == 0) {
    if (convex) throw DomainError("hull of an empty point set");
    out.distance = y.lpNorm<1>();
    out.weights = Vec();
    out.closest = Vec::Zero(d);
    return out;
  }
  LpProblem pr;
  const int nv = m + 2 * d;
  pr.c = Vec::Zero(nv);
  pr.c.tail(2 * d).setOnes();
  pr.a_eq = Mat::Zero(d + (convex ? 1 : 0), nv);
  pr.b_eq = Vec::Zero(d + (convex ? 1 : 0));
  pr.a_eq.topLeftCorner(d, m) = points;
  pr.a_eq.block(0, m, d, d) = Mat::Identity(d, d);
  pr.a_eq.block(0, m + d, d, d) = -Mat::Identity(d, d);
  pr.b_eq.head(d) = y;
  if (convex) {
    pr.a_eq.row(d).head(m).setOnes();
    pr.b_eq(d) = 1.0;
  }
  const LpResult r = solve_lp(pr);
  if (r.status != LpStatus::Optimal) throw DomainError("hull distance linear program failed");
  out.weights = r.x.head(m).cwiseMax(0.0);
  out.closest = points * out.weights;
  out.distance = (y - out.closest).lpNorm<1>();
  return out;
}

}  // namespace

HullDistance hull_distance(const Mat& points, const Vec& y) { return l1_fit(points, y, true); }

HullDistance cone_distance(const Mat& generators, const Vec& v) {
  return l1_fit(generators, v, false);
}

}  // namespace redctl
