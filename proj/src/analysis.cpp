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

#include "redctl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace redctl {

namespace {

double scale_of(const Vec& a) { return std::max(1.0, a.size() ? a.lpNorm<Eigen::Infinity>() : 0.0); }

bool affine_only(const DriftField& x) { return x.is_affine(); }

Vec sorted_desc(Vec v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

Mat columns(const std::vector<Vec>& v, int rows) {
  Mat m(rows, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

Vec random_unit(const PairDescriptor& pair, Rng& rng) {
  std::normal_distribution<double> g;
  const Mat& b = pair.abelian_basis();
  Vec c(b.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = g(rng);
  Vec d = b * c;
  return d / d.norm();
}

bool polar2_affine_case(const PairDescriptor& pair, const DriftField& x) {
  return pair.kind() == PairKind::PolarDec && pair.n() == 2 && x.is_affine();
}

}  // namespace

// ---------------------------------------------------------------- polytopes

Mat WeylPolytope::vertex_matrix() const {
  return columns(vertices, static_cast<int>(base.size()));
}

WeylPolytope weyl_polytope(const PairDescriptor& pair, const APoint& a) {
  if (a.size() != pair.coord_dim()) throw ShapeError("reduced point has wrong size");
  WeylPolytope p;
  p.base = a;
  const double tol = 1e-12 * scale_of(a);
  for (const WeylElement& w : weyl_elements(pair)) {
    const Vec v = w.apply(a);
    const bool seen = std::any_of(p.vertices.begin(), p.vertices.end(), [&](const Vec& u) {
      return (u - v).lpNorm<Eigen::Infinity>() <= tol;
    });
    if (!seen) {
      p.vertices.push_back(v);
      p.elements.push_back(w);
    }
  }
  try {
    p.hull = convex_hull(p.vertex_matrix());
  } catch (const CapacityError&) {
  }
  return p;
}

std::optional<bool> majorizes_fast(const PairDescriptor& pair, const APoint& a, const APoint& b,
                                   double tol) {
  if (a.size() != pair.coord_dim() || b.size() != pair.coord_dim())
    throw ShapeError("reduced point has wrong size");
  switch (pair.kind()) {
    case PairKind::HermitianEVD: {
      const Vec sa = sorted_desc(a), sb = sorted_desc(b);
      double pa = 0, pb = 0;
      for (Eigen::Index i = 0; i < sa.size(); ++i) {
        pa += sa(i), pb += sb(i);
        if (i + 1 < sa.size() && pb > pa + tol) return false;
      }
      return std::abs(pa - pb) <= tol;
    }
    case PairKind::RealSVD: {
      const Vec sa = sorted_desc(a.cwiseAbs()), sb = sorted_desc(b.cwiseAbs());
      double pa = 0, pb = 0;
      for (Eigen::Index i = 0; i < sa.size(); ++i) {
        pa += sa(i), pb += sb(i);
        if (pb > pa + tol) return false;
      }
      return true;
    }
    case PairKind::PolarDec:
      return std::abs(b(0)) <= std::abs(a(0)) + tol;
  }
  return std::nullopt;
}

MajorizationCheck majorization_check(const PairDescriptor& pair, const APoint& a, const APoint& b,
                                     double tol) {
  MajorizationCheck c;
  c.fast = majorizes_fast(pair, a, b, tol);
  const WeylPolytope poly = weyl_polytope(pair, a);
  const HullDistance hd = hull_distance(poly.vertex_matrix(), b);
  c.lp_distance = hd.distance;
  c.lp = hd.distance <= tol;
  c.slack = c.lp ? 0.0 : -hd.distance;
  return c;
}

bool majorizes_lp(const PairDescriptor& pair, const APoint& a, const APoint& b, double tol) {
  return majorization_check(pair, a, b, tol).lp;
}

bool majorizes(const PairDescriptor& pair, const APoint& a, const APoint& b, double tol) {
  if (auto f = majorizes_fast(pair, a, b, tol)) return *f;
  return majorizes_lp(pair, a, b, tol);
}

// ---------------------------------------------------------------- cones

bool ConeData::contains(const Vec& v, double tol) const {
  if (!closed_form) throw DomainError("cone has no facet description");
  const double s = tol * std::max(1.0, v.norm());
  if (normals.rows() && (normals * v).maxCoeff() > s) return false;
  if (equalities.rows() && (equalities * v).cwiseAbs().maxCoeff() > s) return false;
  return true;
}

bool ConeData::contains_lp(const Vec& v, double tol) const {
  return cone_distance(generators, v).distance <= tol * std::max(1.0, v.norm());
}

ConeData tangent_cone_at_vertex(const PairDescriptor& pair, const WeylPolytope& poly,
                                std::size_t vertex, double tol_reg) {
  if (vertex >= poly.vertices.size()) throw DomainError("vertex index out of range");
  const Vec& v = poly.vertices[vertex];
  const int d = static_cast<int>(v.size());
  ConeData c;
  const Fold f = chamber_fold(pair, poly.base);
  const double tol = tol_reg < 0 ? default_tol_reg(poly.base) : tol_reg;
  const ChamberData& ch = pair.chamber();
  if (regularity_margin(pair, f.a) > tol) {
    const WeylElement w = poly.elements[vertex].compose(f.w.inverse());
    const int r = static_cast<int>(ch.simple_roots.size());
    c.generators.resize(d, r);
    c.normals.resize(r, d);
    for (int i = 0; i < r; ++i) {
      c.generators.col(i) = -w.apply(ch.simple_roots[i]);
      c.normals.row(i) = w.apply(ch.weights[i]).transpose();
    }
    c.equalities.resize(static_cast<Eigen::Index>(ch.invariant_directions.size()), d);
    for (std::size_t i = 0; i < ch.invariant_directions.size(); ++i)
      c.equalities.row(static_cast<Eigen::Index>(i)) = ch.invariant_directions[i].transpose();
    c.closed_form = true;
    return c;
  }
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i)
    if (i != vertex) gens.push_back(poly.vertices[i] - v);
  c.generators = columns(gens, d);
  return c;
}

// ---------------------------------------------------------------- faces

FaceDecomposition face_decompose(const PairDescriptor& pair, const WeylPolytope& poly,
                                 const APoint& x, double tol) {
  if (x.size() != pair.coord_dim()) throw ShapeError("reduced point has wrong size");
  const Mat v = poly.vertex_matrix();
  const int d = static_cast<int>(v.rows());
  const int m = static_cast<int>(v.cols());
  const double sc = scale_of(poly.base);
  const HullDistance hd = hull_distance(v, x);
  if (hd.distance > tol * sc) throw DomainError("point lies outside the Weyl polytope");
  const double wtol = std::min(tol, 1e-9);

  // maximize the total weight on vertices not yet known to lie in the face
  LpProblem pr;
  const int nv = m + 2 * d;
  pr.a_eq = Mat::Zero(d + 1, nv);
  pr.b_eq = Vec::Zero(d + 1);
  pr.a_eq.topLeftCorner(d, m) = v;
  pr.a_eq.block(0, m, d, d) = Mat::Identity(d, d);
  pr.a_eq.block(0, m + d, d, d) = -Mat::Identity(d, d);
  pr.b_eq.head(d) = x;
  pr.a_eq.row(d).head(m).setOnes();
  pr.b_eq(d) = 1.0;
  pr.a_ub = Mat::Zero(1, nv);
  pr.a_ub.row(0).tail(2 * d).setOnes();
  pr.b_ub = Vec::Constant(1, hd.distance + 1e-12 * sc);

  std::vector<bool> in_face(m, false);
  Vec acc = Vec::Zero(m);
  int n_sol = 0;
  auto absorb = [&](const Vec& lam) {
    acc += lam;
    ++n_sol;
    for (int i = 0; i < m; ++i)
      if (lam(i) > wtol) in_face[i] = true;
  };
  absorb(hd.weights);
  for (int round = 0; round < m; ++round) {
    pr.c = Vec::Zero(nv);
    bool any = false;
    for (int i = 0; i < m; ++i)
      if (!in_face[i]) pr.c(i) = -1.0, any = true;
    if (!any) break;
    const LpResult r = solve_lp(pr);
    if (r.status != LpStatus::Optimal || -r.objective <= wtol) break;
    absorb(r.x.head(m).cwiseMax(0.0));
  }
  FaceDecomposition out;
  acc /= static_cast<double>(n_sol);
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    if (in_face[i]) total += acc(i);
  Vec lam = Vec::Zero(m);
  for (int i = 0; i < m; ++i)
    if (in_face[i]) {
      out.indices.push_back(static_cast<std::size_t>(i));
      out.weights.push_back(acc(i) / total);
      lam(i) = acc(i) / total;
    }
  out.residual = (v * lam - x).norm();
  return out;
}

// ---------------------------------------------------------------- simulation

namespace {

void check_decomposition(const StepDecomposition& dec) {
  if (dec.mu.empty() || dec.mu.size() != dec.k.size())
    throw DomainError("step decomposition needs one weight per group element");
  double s = 0.0;
  for (double m : dec.mu) {
    if (!(m >= -1e-12)) throw DomainError("step decomposition weights must be nonnegative");
    s += m;
  }
  if (std::abs(s - 1.0) > 1e-9) throw DomainError("step decomposition weights must sum to one");
}

struct AffineMap {
  Mat m;
  Vec c;
};

AffineMap combined_field(const PairDescriptor& pair, const DriftField& x,
                         const StepDecomposition& dec) {
  const int d = pair.coord_dim();
  AffineMap g{Mat::Zero(d, d), Vec::Zero(d)};
  for (std::size_t j = 0; j < dec.k.size(); ++j) {
    const InducedAffine ia = induced_affine(pair, x, dec.k[j]);
    g.m += dec.mu[j] * ia.mat;
    g.c += dec.mu[j] * ia.off;
  }
  return g;
}

double span_residual(const std::vector<Vec>& dirs, const Vec& y) {
  if (dirs.empty()) return y.norm();
  const Mat q = range_basis(columns(dirs, static_cast<int>(y.size())), 1e-10);
  if (q.cols() == 0) return y.norm();
  return (y - q * (q.transpose() * y)).norm();
}

}  // namespace

SimulationDirection simulation_direction(const PairDescriptor& pair, const DriftField& x,
                                         const APoint& xb, const APoint& a,
                                         const StepDecomposition& dec, double tol) {
  if (!affine_only(x)) throw DomainError("simulation direction needs an affine drift");
  check_decomposition(dec);
  SimulationDirection out;
  const WeylPolytope poly = weyl_polytope(pair, xb);
  out.face = face_decompose(pair, poly, a, std::max(tol, 1e-9));

  const AffineMap g = combined_field(pair, x, dec);
  const Vec a_dot = g.m * a + g.c;
  Vec v = Vec::Zero(a.size());
  for (std::size_t f = 0; f < out.face.indices.size(); ++f) {
    const std::size_t i = out.face.indices[f];
    const GroupElement n = weyl_representative(pair, poly.elements[i]);
    Vec vi = Vec::Zero(a.size());
    for (std::size_t j = 0; j < dec.k.size(); ++j)
      vi += dec.mu[j] * induced_field(pair, x, compose(dec.k[j], n), xb);
    v += out.face.weights[f] * vi;
  }
  out.v = v;

  Vec moved = Vec::Zero(a.size());
  std::vector<Vec> dirs;
  const Vec& v0 = poly.vertices[out.face.indices.front()];
  for (std::size_t f = 0; f < out.face.indices.size(); ++f) {
    const std::size_t i = out.face.indices[f];
    moved += out.face.weights[f] * poly.elements[i].apply(v);
    if (f) dirs.push_back(poly.vertices[i] - v0);
  }
  out.certificate = span_residual(dirs, a_dot - moved);

  const double stol = 1e-9 * scale_of(xb);
  std::vector<const Vec*> active;
  for (const Vec& alpha : pair.chamber().simple_roots)
    if (std::abs(alpha.dot(xb)) <= stol) active.push_back(&alpha);
  out.fold = weyl_identity(pair);
  out.v_folded = v;
  if (!active.empty()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const WeylElement& u : weyl_stabilizer(pair, xb, stol)) {
      const Vec uv = u.apply(v);
      double s = std::numeric_limits<double>::infinity();
      for (const Vec* alpha : active) s = std::min(s, alpha->dot(uv));
      if (s > best + 1e-15) best = s, out.fold = u, out.v_folded = uv;
    }
  }
  return out;
}

DominatingResult simulate_dominating(const PairDescriptor& pair, const DriftField& x,
                                     const Trajectory& a, const APoint& b0,
                                     const DominatingOptions& opts) {
  if (!affine_only(x)) throw DomainError("simulate_dominating needs an affine drift");
  const std::size_t n = a.a.size();
  if (n == 0 || a.t.size() != n) throw DomainError("trajectory has inconsistent node data");
  if (a.steps.size() + 1 != n)
    throw DomainError("trajectory must record one step decomposition per interval");
  const MajorizationCheck c0 = majorization_check(pair, b0, a.a.front(), opts.slack_tol);
  if (!c0.lp) throw DomainError("initial state is not dominated by b0");
  // Taylor order of the recorded one-step map for a frozen affine field
  const int order = a.method == "euler" ? 1 : a.method == "rk4" ? 4 : 2;
  const std::vector<WeylElement>& ws = weyl_elements(pair);
  const int d = pair.coord_dim();

  DominatingResult res;
  res.b.t = a.t;
  res.b.dt = a.dt;
  res.b.method = "dominating";
  APoint b = chamber_fold(pair, b0).a;
  res.b.a.push_back(b);
  res.slack.push_back(c0.slack);

  auto step_map = [&](const AffineMap& g, double h, const Vec& y) {
    Vec term = h * (g.m * y + g.c);
    Vec out = y + term;
    for (int k = 2; k <= order; ++k) {
      term = (h / k) * (g.m * term);
      out += term;
    }
    return out;
  };
  auto orbit_matrix = [&](const Vec& y) {
    Mat o(d, static_cast<Eigen::Index>(ws.size()));
    for (std::size_t i = 0; i < ws.size(); ++i) o.col(static_cast<Eigen::Index>(i)) = ws[i].apply(y);
    return o;
  };

  for (std::size_t s = 0; s + 1 < n; ++s) {
    const double h = a.t[s + 1] - a.t[s];
    const StepDecomposition& dec = a.steps[s];
    check_decomposition(dec);
    const AffineMap g = combined_field(pair, x, dec);
    const double sc = std::max(scale_of(b), scale_of(a.a[s + 1]));

    const WeylPolytope poly = weyl_polytope(pair, b);
    FaceDecomposition face;
    try {
      face = face_decompose(pair, poly, a.a[s], opts.slack_tol);
    } catch (const DomainError&) {
      res.ok = false;
      if (!res.first_violation) res.first_violation = s;
      face = face_decompose(pair, poly, poly.vertices.front(), opts.slack_tol);
    }
    // per-vertex targets w^{-1} A(w b) of the recorded step map A
    Vec next = Vec::Zero(d);
    for (std::size_t f = 0; f < face.indices.size(); ++f) {
      const WeylElement& w = poly.elements[face.indices[f]];
      next += face.weights[f] * w.inverse().apply(step_map(g, h, w.apply(b)));
    }
    HullDistance hd = hull_distance(orbit_matrix(next), a.a[s + 1]);
    if (hd.distance > opts.face_tol * sc) {
      ++res.fallback_steps;
      std::vector<Vec> targets;
      for (const WeylElement& w : ws) targets.push_back(w.inverse().apply(step_map(g, h, w.apply(b))));
      Vec rho = hd.weights;
      Vec best = next;
      double best_d = hd.distance;
      for (int round = 0; round < opts.fallback_rounds && best_d > opts.face_tol * sc; ++round) {
        Mat z(d, static_cast<Eigen::Index>(targets.size()));
        for (std::size_t i = 0; i < targets.size(); ++i) {
          Vec zi = Vec::Zero(d);
          for (std::size_t k = 0; k < ws.size(); ++k) zi += rho(static_cast<Eigen::Index>(k)) * ws[k].apply(targets[i]);
          z.col(static_cast<Eigen::Index>(i)) = zi;
        }
        const HullDistance th = hull_distance(z, a.a[s + 1]);
        Vec cand = Vec::Zero(d);
        for (std::size_t i = 0; i < targets.size(); ++i) cand += th.weights(static_cast<Eigen::Index>(i)) * targets[i];
        const HullDistance rh = hull_distance(orbit_matrix(cand), a.a[s + 1]);
        rho = rh.weights;
        if (rh.distance < best_d) best_d = rh.distance, best = cand;
        else break;
      }
      next = best;
      hd.distance = best_d;
    }
    b = chamber_fold(pair, next).a;
    res.b.a.push_back(b);
    const double slack = hd.distance <= opts.face_tol * sc ? 0.0 : -hd.distance;
    res.slack.push_back(slack);
    if (slack < -opts.slack_tol) {
      res.ok = false;
      if (!res.first_violation) res.first_violation = s + 1;
    }
  }
  res.min_slack = *std::min_element(res.slack.begin(), res.slack.end());
  return res;
}

// ---------------------------------------------------------------- reachability

ReachCloud reach_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a0,
                        double T, int n_traj, std::uint64_t seed, const ReachOptions& opts) {
  if (n_traj < 1) throw DomainError("reach_sample needs at least one trajectory");
  if (a0.size() != pair.coord_dim()) throw ShapeError("initial reduced state has wrong size");
  const int d = pair.coord_dim();
  ReachCloud cloud;
  cloud.points.resize(d, n_traj);
  for (int i = 0; i < n_traj; ++i) {
    const std::uint64_t si = stream_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(si);
    std::uniform_real_distribution<double> u01;
    Selector sel = Selector::greedy_max_inner(random_unit(pair, rng));
    if (u01(rng) >= 0.5 && T > 0) {
      std::uniform_int_distribution<int> count(2, std::max(2, opts.segments_max));
      const int k = count(rng);
      std::vector<double> starts{0.0};
      for (int j = 1; j < k; ++j) starts.push_back(T * u01(rng));
      std::sort(starts.begin(), starts.end());
      for (double s : starts) sel.segments.emplace_back(s, random_unit(pair, rng));
    }
    sel.source = default_source(pair, si);
    const Trajectory tr = integrate_inclusion(pair, x, sel, a0, T, opts.dt, si, opts.scheme);
    cloud.points.col(i) = tr.a.back();
  }
  cloud.lower = cloud.points.rowwise().minCoeff();
  cloud.upper = cloud.points.rowwise().maxCoeff();
  try {
    cloud.hull = convex_hull(cloud.points);
  } catch (const Error&) {
  }
  return cloud;
}

// ---------------------------------------------------------------- qualitative tests

StabilizableReport stabilizable_test(const PairDescriptor& pair, const DriftField& x,
                                     const APoint& a, int n_samples, double tol,
                                     std::uint64_t seed) {
  if (a.size() != pair.coord_dim()) throw ShapeError("reduced point has wrong size");
  StabilizableReport rep;
  const DervSample ds = derv_sample(pair, x, a, std::max(1, n_samples), seed);
  const Mat vals = ds.values();
  double c = 0.0;
  for (Eigen::Index j = 0; j < vals.cols(); ++j) c = std::max(c, vals.col(j).norm());
  rep.tol = tol < 0 ? 1e-6 * (c + 1.0) : tol;

  const bool connected = pair.kind() != PairKind::RealSVD;
  if (pair.rank() == 1 && connected) {
    // derv(a) is a segment along the abelian direction; its ends are support points
    const Vec e = pair.abelian_basis().col(0);
    double lo, hi;
    if (polar2_affine_case(pair, x)) {
      const Polar2Affine pa = polar2_affine(pair, x);
      hi = pa.value(pa.argmax(a(0), 1.0, 4096, 3), a(0));
      lo = pa.value(pa.argmax(a(0), -1.0, 4096, 3), a(0));
    } else {
      Eigen::Index jmax = 0, jmin = 0;
      const Vec proj = vals.transpose() * e;
      proj.maxCoeff(&jmax);
      proj.minCoeff(&jmin);
      hi = e.dot(support_point(pair, x, a, e, ds.entries[jmax].k).v);
      lo = e.dot(support_point(pair, x, a, -e, ds.entries[jmin].k).v);
    }
    rep.weak = lo <= rep.tol && hi >= -rep.tol;
    rep.strong = rep.weak;
    rep.weak_distance = std::max({0.0, lo, -hi});
    rep.min_norm = rep.weak ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    return rep;
  }

  rep.weak_distance = hull_distance(vals, Vec::Zero(a.size())).distance;
  rep.weak = rep.weak_distance <= rep.tol;
  std::vector<Eigen::Index> order(vals.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return vals.col(i).norm() < vals.col(j).norm(); });
  rep.min_norm = vals.col(order.front()).norm();
  auto neg_sq = [&](const GroupElement& k) { return -induced_field(pair, x, k, a).squaredNorm(); };
  for (std::size_t s = 0; s < std::min<std::size_t>(4, order.size()) && rep.min_norm > rep.tol; ++s) {
    const AscentResult ar = group_ascent(pair, neg_sq, ds.entries[order[s]].k, 200);
    rep.min_norm = std::min(rep.min_norm, std::sqrt(std::max(0.0, -ar.value)));
  }
  rep.strong = rep.min_norm <= rep.tol;
  return rep;
}

InvarianceReport invariance_test(const PairDescriptor& pair, const DriftField& x, double radius,
                                 int n_boundary, double tol, std::uint64_t seed) {
  if (!(radius > 0)) throw DomainError("ball radius must be positive");
  std::vector<Vec> dirs;
  const Mat& basis = pair.abelian_basis();
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    dirs.push_back(basis.col(j));
    dirs.push_back(-basis.col(j));
  }
  Rng rng(stream_seed(seed, 0x1a7a11ULL));
  for (int i = 0; i < n_boundary; ++i) dirs.push_back(random_unit(pair, rng));

  std::optional<Polar2Affine> pa;
  if (polar2_affine_case(pair, x)) pa = polar2_affine(pair, x);
  InvarianceReport rep;
  rep.max_radial = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const APoint a = radius * dirs[i];
    double best;
    if (pa) {
      const double s = a(0) < 0 ? -1.0 : 1.0;
      best = a(0) * pa->value(pa->argmax(a(0), s, 4096, 3), a(0));
    } else {
      const DervSample ds = derv_sample(pair, x, a, 64, stream_seed(seed, i));
      const Vec proj = ds.values().transpose() * a;
      Eigen::Index j = 0;
      best = proj.maxCoeff(&j);
      best = std::max(best, a.dot(support_point(pair, x, a, a, ds.entries[j].k).v));
    }
    if (best > rep.max_radial) rep.max_radial = best, rep.worst = a;
  }
  rep.invariant = rep.max_radial <= tol * std::max(1.0, radius);
  return rep;
}

AccessibilityReport direct_accessibility_test(const PairDescriptor& pair, const DriftField& x,
                                              const APoint& a, int n_samples, double tol,
                                              std::uint64_t seed) {
  const DervSample ds = derv_sample(pair, x, a, std::max(1, n_samples), seed);
  const Mat p = pair.abelian_basis().transpose() * ds.values();
  AccessibilityReport rep;
  if (p.cols() < p.rows()) return rep;
  Eigen::JacobiSVD<Mat> svd(p);
  rep.min_singular = svd.singularValues()(p.rows() - 1);
  rep.accessible = rep.min_singular > tol;
  return rep;
}

}  // namespace redctl
