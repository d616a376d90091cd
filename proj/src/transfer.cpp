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

#include "redctl/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "redctl/lp.hpp"

namespace redctl {

Trajectory project_trajectory(const PairDescriptor& pair, const FullTrajectory& traj) {
  Trajectory out;
  out.t = traj.t;
  out.dt = traj.dt;
  out.method = "projected";
  out.a.reserve(traj.p.size());
  for (const PPoint& p : traj.p) out.a.push_back(diagonalize(pair, p).a);
  return out;
}

// ---------------------------------------------------------------- residuals

namespace {

double uniform_step(const std::vector<double>& t) {
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < t.size(); ++i)
    if (std::abs((t[i + 1] - t[i]) - h) > 1e-6 * h)
      throw DomainError("projection_residual needs a uniform time grid");
  return h;
}

constexpr std::size_t kSupportStarts = 4;
constexpr std::size_t kCarry = 16;

// Euclidean separating direction from conv(pts) to y, refined from a feasible hull point z.
Vec separating_direction(const Mat& pts, const Vec& y, Vec z, int iters = 200) {
  for (int it = 0; it < iters; ++it) {
    const Vec g = z - y;
    Eigen::Index j = 0;
    (g.transpose() * pts).minCoeff(&j);
    const Vec step = pts.col(j) - z;
    const double gap = -g.dot(step);
    const double ss = step.squaredNorm();
    if (gap <= 1e-14 || ss == 0.0) break;
    z += std::min(1.0, gap / ss) * step;
  }
  return y - z;
}

// Index of the connected component of k: the determinant signs of both factors.
int component_of(const GroupElement& k) {
  return (k.left.determinant().real() < 0 ? 1 : 0) + (k.right.determinant().real() < 0 ? 2 : 0);
}

}  // namespace

ResidualReport projection_residual(const PairDescriptor& pair, const DriftField& x,
                                   const Trajectory& traj, const ResidualOptions& opts) {
  const std::size_t n = traj.a.size();
  if (n < 3 || traj.t.size() != n) throw DomainError("projection_residual needs at least 3 nodes");
  const double h = uniform_step(traj.t);
  ResidualReport rep;
  rep.tol = opts.tol;
  rep.distance.assign(n, std::numeric_limits<double>::quiet_NaN());

  const bool polar2 = pair.kind() == PairKind::PolarDec && pair.n() == 2 && x.is_affine();
  std::optional<Polar2Affine> pa;
  std::vector<GroupElement> pool;
  std::vector<InducedAffine> pool_aff;
  if (polar2) {
    pa = polar2_affine(pair, x);
  } else {
    pool = sample_group(pair, KSource::haar(opts.n_samples, opts.seed));
    if (x.is_affine())
      for (const GroupElement& k : pool) pool_aff.push_back(induced_affine(pair, x, k));
  }

  std::vector<GroupElement> carry;  // support frames from the previous node
  int ok = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const APoint& a = traj.a[i];
    const Vec y = (traj.a[i + 1] - traj.a[i - 1]) / (2.0 * h);
    double dist;
    if (polar2) {
      const double hi = pa->value(pa->argmax(a(0), 1.0, 4096, 3), a(0));
      const double lo = pa->value(pa->argmax(a(0), -1.0, 4096, 3), a(0));
      dist = std::max({0.0, lo - y(0), y(0) - hi});
    } else {
      std::vector<GroupElement> ks = carry;
      Mat pts(a.size(), pool.size() + ks.size());
      for (std::size_t j = 0; j < pool.size(); ++j)
        pts.col(j) = x.is_affine() ? pool_aff[j](a) : induced_field(pair, x, pool[j], a);
      for (std::size_t j = 0; j < ks.size(); ++j)
        pts.col(pool.size() + j) = induced_field(pair, x, ks[j], a);
      HullDistance hd = hull_distance(pts, y);
      for (int round = 0; round < opts.refine_rounds && hd.distance > opts.tol; ++round) {
        const Vec d = separating_direction(pts, y, hd.closest);
        const Vec score = (d.transpose() * pts).transpose();
        auto elem = [&](Eigen::Index j) -> const GroupElement& {
          return j < static_cast<Eigen::Index>(pool.size()) ? pool[j] : ks[j - pool.size()];
        };
        std::vector<Eigen::Index> order(static_cast<std::size_t>(score.size()));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(),
                  [&](Eigen::Index l, Eigen::Index r) { return score(l) > score(r); });
        std::vector<Eigen::Index> starts;
        std::set<int> seen;
        for (Eigen::Index j : order) {
          const bool fresh = seen.insert(component_of(elem(j))).second;
          if (fresh || starts.size() < kSupportStarts) starts.push_back(j);
        }
        const Eigen::Index base = pts.cols();
        pts.conservativeResize(Eigen::NoChange, base + static_cast<Eigen::Index>(starts.size()));
        std::vector<GroupElement> found;
        for (std::size_t s = 0; s < starts.size(); ++s) {
          const DervEntry e = support_point(pair, x, a, d, elem(starts[s]));
          found.push_back(e.k);
          pts.col(base + static_cast<Eigen::Index>(s)) = e.v;
        }
        ks.insert(ks.end(), found.begin(), found.end());
        hd = hull_distance(pts, y);
      }
      dist = hd.distance;
      if (ks.size() > kCarry) ks.erase(ks.begin(), ks.end() - static_cast<std::ptrdiff_t>(kCarry));
      carry = std::move(ks);
    }
    rep.distance[i] = dist;
    rep.max_distance = std::max(rep.max_distance, dist);
    const bool w = dist <= opts.tol;
    rep.within.push_back(w);
    ok += w ? 1 : 0;
  }
  rep.fraction_within = static_cast<double>(ok) / static_cast<double>(n - 2);
  return rep;
}

// ---------------------------------------------------------------- lifts

KElement compensating_control(const PairDescriptor& pair, const DriftField& x, const PPoint& p,
                              double tol_reg) {
  const PPoint xp = x(pair, p);
  const PPoint along = project_commutant(pair, p, xp);
  const PPoint orbital{xp.m - along.m};
  return ad_inverse_restricted(pair, p, PPoint{-orbital.m}, tol_reg);
}

std::vector<KElement> induced_controls(const PairDescriptor& pair, const std::vector<double>& t,
                                       const std::vector<GroupElement>& k) {
  const std::size_t n = t.size();
  if (k.size() != n) throw ShapeError("one group element per node is required");
  std::vector<KElement> out(n, zero_k(pair));
  if (n < 2) return out;
  auto combo = [&](std::size_t i0, double w0, std::size_t i1, double w1, std::size_t i2,
                   double w2) {
    return KElement{w0 * k[i0].left + w1 * k[i1].left + w2 * k[i2].left,
                    w0 * k[i0].right + w1 * k[i1].right + w2 * k[i2].right};
  };
  for (std::size_t i = 0; i < n; ++i) {
    KElement d;
    if (n == 2) {
      const double h = t[1] - t[0];
      d = KElement{(k[1].left - k[0].left) / h, (k[1].right - k[0].right) / h};
    } else if (i == 0) {
      const double h1 = t[1] - t[0], h2 = t[2] - t[1];
      d = combo(0, -(2 * h1 + h2) / (h1 * (h1 + h2)), 1, (h1 + h2) / (h1 * h2), 2,
                -h1 / (h2 * (h1 + h2)));
    } else if (i == n - 1) {
      const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
      d = combo(n - 3, h2 / (h1 * (h1 + h2)), n - 2, -(h1 + h2) / (h1 * h2), n - 1,
                (2 * h2 + h1) / (h2 * (h1 + h2)));
    } else {
      const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
      d = combo(i - 1, -h2 / (h1 * (h1 + h2)), i, (h2 - h1) / (h1 * h2), i + 1,
                h1 / (h2 * (h1 + h2)));
    }
    out[i] = project_k(pair, KElement{d.left * k[i].left.adjoint(), d.right * k[i].right.adjoint()});
  }
  return out;
}

std::vector<PPoint> reintegrate_lift(const PairDescriptor& pair, const DriftField& x,
                                     const std::vector<double>& t,
                                     const std::vector<GroupElement>& k,
                                     const std::vector<KElement>& comp, const PPoint& p0) {
  std::vector<PPoint> out{p0};
  PPoint p = p0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    const KElement kind = scale(log_k(pair, compose(k[i + 1], inverse(k[i]))), 1.0 / h);
    const KElement kc = scale(add(comp[i], comp[i + 1]), 0.5);
    const KElement kk = add(kind, kc);
    auto f = [&](const PPoint& q) {
      PPoint d = x(pair, q);
      d.m += ad_bracket(pair, kk, q).m;
      return d;
    };
    const PPoint k1 = f(p);
    const PPoint k2 = f({p.m + 0.5 * h * k1.m});
    const PPoint k3 = f({p.m + 0.5 * h * k2.m});
    const PPoint k4 = f({p.m + h * k3.m});
    p.m += (h / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    if (!p.m.allFinite() || p.m.norm() > 1e12)
      throw DivergenceError("lifted trajectory diverged", t[i]);
    out.push_back(p);
  }
  return out;
}

namespace {

void check_schedule(const Trajectory& traj, const ReducedControls& s) {
  if (traj.t.size() != traj.a.size() || traj.t.empty())
    throw DomainError("trajectory has inconsistent node data");
  if (s.k.size() != traj.t.size() || s.grid.size() != traj.t.size())
    throw DomainError("lift schedule needs one group element per trajectory node");
  for (std::size_t i = 0; i < traj.t.size(); ++i)
    if (std::abs(s.grid[i] - traj.t[i]) > 1e-9 * std::max(1.0, std::abs(traj.t[i])))
      throw DomainError("lift schedule grid differs from the trajectory grid");
}

double node_tol(const LiftOptions& o, const APoint& a) {
  return o.tol_reg < 0 ? default_tol_reg(a) : o.tol_reg;
}

std::optional<double> fit_blowup(const LiftResult& r, double eps) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (double ts : r.singular_times) {
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      const double d = std::abs(r.t[i] - ts);
      if (r.excised[i] || d < eps || d > 4.0 * eps) continue;
      const double kn = k_norm(r.compensating[i]);
      if (!(kn > 0)) continue;
      const double lx = std::log(d), ly = std::log(kn);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      ++cnt;
    }
  }
  if (cnt < 3) return std::nullopt;
  const double den = cnt * sxx - sx * sx;
  if (std::abs(den) < 1e-300) return std::nullopt;
  return -(cnt * sxy - sx * sy) / den;
}

LiftResult lift_impl(const PairDescriptor& pair, const DriftField& x, const Trajectory& traj,
                     const ReducedControls& sched, double eps, const LiftOptions& opts) {
  check_schedule(traj, sched);
  const std::size_t n = traj.t.size();
  const bool regular_only = eps < 0;
  LiftResult r;
  r.t = traj.t;
  r.excised.assign(n, false);

  if (!regular_only) {
    std::vector<std::pair<double, double>> raw;
    std::size_t i = 0;
    while (i < n) {
      if (regularity_margin(pair, traj.a[i]) <= node_tol(opts, traj.a[i])) {
        std::size_t j = i;
        while (j + 1 < n && regularity_margin(pair, traj.a[j + 1]) <= node_tol(opts, traj.a[j + 1]))
          ++j;
        raw.push_back({traj.t[i], traj.t[j]});
        for (std::size_t m = i; m <= j; ++m) r.singular_times.push_back(traj.t[m]);
        i = j + 1;
        continue;
      }
      if (i + 1 < n && regularity_margin(pair, traj.a[i + 1]) > node_tol(opts, traj.a[i + 1])) {
        const std::vector<double> v0 = root_values(pair, traj.a[i]);
        const std::vector<double> v1 = root_values(pair, traj.a[i + 1]);
        for (std::size_t q = 0; q < v0.size(); ++q)
          if (v0[q] * v1[q] < 0) {
            const double s = v0[q] / (v0[q] - v1[q]);
            const double ts = traj.t[i] + s * (traj.t[i + 1] - traj.t[i]);
            raw.push_back({ts, ts});
            r.singular_times.push_back(ts);
          }
      }
      ++i;
    }
    const double t0 = traj.t.front(), t1 = traj.t.back();
    for (auto& iv : raw) iv = {std::max(t0, iv.first - eps), std::min(t1, iv.second + eps)};
    std::sort(raw.begin(), raw.end());
    for (const auto& iv : raw) {
      if (!r.excised_intervals.empty() && iv.first <= r.excised_intervals.back().second)
        r.excised_intervals.back().second = std::max(r.excised_intervals.back().second, iv.second);
      else
        r.excised_intervals.push_back(iv);
    }
    for (const auto& iv : r.excised_intervals) r.excised_measure += iv.second - iv.first;
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& iv : r.excised_intervals)
        if (traj.t[k] >= iv.first && traj.t[k] <= iv.second) r.excised[k] = true;
  }

  r.p.reserve(n);
  r.compensating.assign(n, zero_k(pair));
  for (std::size_t i = 0; i < n; ++i) {
    const APoint& a = traj.a[i];
    const double tol = node_tol(opts, a);
    if (regular_only && !(regularity_margin(pair, a) > tol)) {
      std::ostringstream os;
      os << "trajectory is not regular at node " << i << " (t = " << traj.t[i] << ")";
      throw SingularityError(os.str(), static_cast<long>(i));
    }
    if (regular_only && i > 0) {
      const std::vector<double> v0 = root_values(pair, traj.a[i - 1]);
      const std::vector<double> v1 = root_values(pair, a);
      for (std::size_t q = 0; q < v0.size(); ++q)
        if (v0[q] * v1[q] < 0) {
          std::ostringstream os;
          os << "trajectory crosses a wall before node " << i << " (t = " << traj.t[i] << ")";
          throw SingularityError(os.str(), static_cast<long>(i));
        }
    }
    r.p.push_back(adjoint_action(pair, sched.k[i], embed(pair, a)));
    if (!r.excised[i]) {
      try {
        r.compensating[i] = compensating_control(pair, x, r.p.back(), tol);
      } catch (const SingularityError&) {
        std::ostringstream os;
        os << "compensating control is singular at node " << i << " (t = " << traj.t[i] << ")";
        throw SingularityError(os.str(), static_cast<long>(i));
      }
    }
  }
  r.induced = induced_controls(pair, traj.t, sched.k);

  if (opts.reintegrate) {
    r.p_integrated = reintegrate_lift(pair, x, traj.t, sched.k, r.compensating, r.p.front());
    for (std::size_t i = 0; i < n; ++i)
      r.deviation = std::max(r.deviation, (r.p[i].m - r.p_integrated[i].m).norm());
  }

  if (x.is_affine() || x.kind() == DriftKind::Custom) {
    const double c1 = x.growth_c1(pair), c2 = x.growth_c2(pair), l = x.lipschitz(pair);
    const double T = traj.t.back() - traj.t.front();
    double rad = (traj.a.front().norm() + T * c2) * std::exp(T * c1);
    for (const PPoint& p : r.p) rad = std::max(rad, norm(p));
    for (const PPoint& p : r.p_integrated) rad = std::max(rad, norm(p));
    r.bound = 2.0 * r.excised_measure * (c1 * rad + c2) * std::exp(l * T);
  }
  if (!regular_only) r.blowup_exponent = fit_blowup(r, eps);
  return r;
}

}  // namespace

LiftResult regular_lift(const PairDescriptor& pair, const DriftField& x, const Trajectory& traj,
                        const ReducedControls& schedule, const LiftOptions& opts) {
  return lift_impl(pair, x, traj, schedule, -1.0, opts);
}

LiftResult approximate_lift(const PairDescriptor& pair, const DriftField& x,
                            const Trajectory& traj, const ReducedControls& schedule, double eps,
                            const LiftOptions& opts) {
  if (!(eps > 0)) throw DomainError("excision radius must be positive");
  return lift_impl(pair, x, traj, schedule, eps, opts);
}

}  // namespace redctl
