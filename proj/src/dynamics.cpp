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

#include "redctl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace redctl {

namespace {

constexpr double kDivergence = 1e12;

void check_grid(const std::vector<double>& g) {
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw DomainError("control grid must be strictly increasing");
}

int interval_index(const std::vector<double>& g, double t, int count) {
  int j = static_cast<int>(std::upper_bound(g.begin(), g.end(), t) - g.begin()) - 1;
  return std::clamp(j, 0, std::max(count - 1, 0));
}

void check_state(double norm_value, bool finite, double t) {
  if (!finite || !(norm_value <= kDivergence)) {
    std::ostringstream os;
    os << "state diverged after t = " << t;
    throw DivergenceError(os.str(), t);
  }
}

}  // namespace

std::vector<double> time_nodes(double T, double dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw DomainError("dt must be positive and finite");
  if (!(T >= 0) || !std::isfinite(T)) throw DomainError("T must be nonnegative and finite");
  std::vector<double> t{0.0};
  if (T == 0) return t;
  const long n = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  for (long i = 1; i < n; ++i) t.push_back(i * dt);
  t.push_back(T);
  return t;
}

Vec FullControls::at(double t) const {
  const int m = static_cast<int>(directions.size());
  if (m == 0) return Vec();
  if (values.cols() != m || values.rows() == 0)
    throw ShapeError("control values do not match the control directions");
  const int rows = static_cast<int>(values.rows());
  if (hold == Hold::Constant) return values.row(interval_index(grid, t, rows)).transpose();
  if (static_cast<Eigen::Index>(grid.size()) != values.rows())
    throw ShapeError("linear-hold controls need one value row per grid node");
  if (t <= grid.front()) return values.row(0).transpose();
  if (t >= grid.back()) return values.row(rows - 1).transpose();
  const int j = interval_index(grid, t, rows - 1);
  const double s = (t - grid[j]) / (grid[j + 1] - grid[j]);
  return ((1 - s) * values.row(j) + s * values.row(j + 1)).transpose();
}

Selector Selector::greedy_max_inner(Vec d) {
  Selector s;
  s.kind = Kind::GreedyMaxInner;
  s.direction = std::move(d);
  return s;
}

Selector Selector::envelope_max() {
  Selector s;
  s.kind = Kind::EnvelopeMax;
  return s;
}

Selector Selector::convex_mix(std::vector<double> w) {
  Selector s;
  s.kind = Kind::ConvexMix;
  s.weights = std::move(w);
  return s;
}

Selector Selector::random() {
  Selector s;
  s.kind = Kind::Random;
  return s;
}

KSource default_source(const PairDescriptor& pair, std::uint64_t seed) {
  if (pair.kind() == PairKind::PolarDec && pair.n() == 2) return KSource::angle_grid(4096);
  return KSource::haar(256, seed);
}

// ---------------------------------------------------------------- full system

FullTrajectory integrate_full(const PairDescriptor& pair, const DriftField& x,
                              const FullControls& c, const PPoint& p0, double T, double dt) {
  check_point(pair, p0);
  check_grid(c.grid);
  const std::vector<double> nodes = time_nodes(T, dt);
  if (!c.directions.empty()) {
    if (c.grid.empty() || c.grid.front() > 1e-12 || c.grid.back() < T - 1e-12)
      throw DomainError("control grid does not cover [0, T]");
  }
  auto rhs = [&](const PPoint& p, const Vec& u) {
    PPoint d = x(pair, p);
    for (std::size_t i = 0; i < c.directions.size(); ++i)
      if (u(i) != 0.0) d.m += u(i) * ad_bracket(pair, c.directions[i], p).m;
    return d;
  };
  FullTrajectory out;
  out.dt = dt;
  out.method = "rk4";
  out.t = nodes;
  out.p.push_back(p0);
  PPoint p = p0;
  const bool linear = c.hold == FullControls::Hold::Linear;
  for (std::size_t n = 0; n + 1 < nodes.size(); ++n) {
    const double t = nodes[n], h = nodes[n + 1] - nodes[n];
    const Vec um = c.at(t + 0.5 * h);
    const Vec u0 = linear ? c.at(t) : um;
    const Vec u1 = linear ? c.at(t + h) : um;
    const PPoint k1 = rhs(p, u0);
    const PPoint k2 = rhs({p.m + 0.5 * h * k1.m}, um);
    const PPoint k3 = rhs({p.m + 0.5 * h * k2.m}, um);
    const PPoint k4 = rhs({p.m + h * k3.m}, u1);
    p.m += (h / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    check_state(p.m.norm(), p.m.allFinite(), t);
    out.p.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------- reduced system

GroupElement schedule_at(const PairDescriptor& pair, const ReducedControls& c, double t) {
  if (c.k.empty()) throw DomainError("empty reduced schedule");
  const int count = static_cast<int>(c.k.size());
  if (c.hold == ReducedControls::Hold::Constant || count == 1)
    return c.k[interval_index(c.grid, t, count)];
  if (t <= c.grid.front()) return c.k.front();
  if (t >= c.grid.back()) return c.k.back();
  const int j = interval_index(c.grid, t, count - 1);
  const double s = (t - c.grid[j]) / (c.grid[j + 1] - c.grid[j]);
  const KElement l = log_k(pair, compose(inverse(c.k[j]), c.k[j + 1]));
  return compose(c.k[j], exp_k(pair, scale(l, s)));
}

Trajectory integrate_reduced(const PairDescriptor& pair, const DriftField& x,
                             const ReducedControls& c, const APoint& a0, double T, double dt) {
  if (a0.size() != pair.coord_dim()) throw ShapeError("initial reduced state has wrong size");
  check_grid(c.grid);
  const std::vector<double> nodes = time_nodes(T, dt);
  Trajectory out;
  out.dt = dt;
  out.method = "rk4";
  out.t = nodes;
  out.a.push_back(a0);
  if (nodes.size() == 1) return out;
  if (c.k.empty() || c.grid.size() != c.k.size())
    throw DomainError("reduced schedule needs one group element per grid node");
  if (c.grid.front() > 1e-12 || (c.k.size() > 1 && c.grid.back() < T - 1e-12 &&
                                 c.hold == ReducedControls::Hold::Geodesic))
    throw DomainError("reduced schedule does not cover [0, T]");

  const bool constant = c.hold == ReducedControls::Hold::Constant;
  std::map<int, InducedAffine> cache;
  auto field_const = [&](int j, const APoint& a) -> APoint {
    if (!x.is_affine()) return induced_field(pair, x, c.k[j], a);
    auto it = cache.find(j);
    if (it == cache.end()) it = cache.emplace(j, induced_affine(pair, x, c.k[j])).first;
    return it->second(a);
  };
  auto field_at = [&](double t, const APoint& a) {
    return induced_field(pair, x, schedule_at(pair, c, t), a);
  };
  APoint a = a0;
  const int count = static_cast<int>(c.k.size());
  for (std::size_t n = 0; n + 1 < nodes.size(); ++n) {
    const double t = nodes[n], h = nodes[n + 1] - nodes[n];
    APoint k1, k2, k3, k4;
    StepDecomposition dec;
    dec.mu = {1.0};
    if (constant) {
      const int j = interval_index(c.grid, t + 0.5 * h, count);
      k1 = field_const(j, a);
      k2 = field_const(j, a + 0.5 * h * k1);
      k3 = field_const(j, a + 0.5 * h * k2);
      k4 = field_const(j, a + h * k3);
      dec.k = {c.k[j]};
    } else {
      k1 = field_at(t, a);
      k2 = field_at(t + 0.5 * h, a + 0.5 * h * k1);
      k3 = field_at(t + 0.5 * h, a + 0.5 * h * k2);
      k4 = field_at(t + h, a + h * k3);
      dec.k = {schedule_at(pair, c, t + 0.5 * h)};
    }
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_state(a.norm(), a.allFinite(), t);
    out.a.push_back(a);
    out.steps.push_back(std::move(dec));
  }
  return out;
}

// ---------------------------------------------------------------- inclusion

Trajectory integrate_inclusion(const PairDescriptor& pair, const DriftField& x,
                               const Selector& sel, const APoint& a0, double T, double dt,
                               std::uint64_t seed, Scheme scheme) {
  if (a0.size() != pair.coord_dim()) throw ShapeError("initial reduced state has wrong size");
  const std::vector<double> nodes = time_nodes(T, dt);
  Trajectory out;
  out.dt = dt;
  out.method = scheme == Scheme::Heun ? "heun" : "euler";
  out.t = nodes;
  out.a.push_back(a0);
  if (nodes.size() == 1) return out;

  const KSource src = sel.source.value_or(default_source(pair, seed));
  const bool polar2 = pair.kind() == PairKind::PolarDec && pair.n() == 2 && x.is_affine() &&
                      src.kind == KSource::Kind::AngleGrid;
  std::vector<GroupElement> pool = sample_group(pair, src);
  std::optional<Polar2Affine> pa2;
  if (polar2) pa2 = polar2_affine(pair, x);
  const bool pool_needed = !(polar2 && (sel.kind == Selector::Kind::GreedyMaxInner ||
                                        sel.kind == Selector::Kind::EnvelopeMax));
  std::vector<InducedAffine> pool_aff;
  if (x.is_affine() && pool_needed)
    for (const GroupElement& k : pool) pool_aff.push_back(induced_affine(pair, x, k));
  auto pool_value = [&](std::size_t j, const APoint& a) {
    return x.is_affine() ? pool_aff[j](a) : induced_field(pair, x, pool[j], a);
  };

  std::vector<GroupElement> reps;
  if (sel.kind == Selector::Kind::ConvexMix) {
    const auto& ws = weyl_elements(pair);
    if (sel.weights.size() != ws.size())
      throw DomainError("convex_mix needs one weight per Weyl group element");
    double sum = 0.0;
    for (double w : sel.weights) {
      if (!(w >= 0)) throw DomainError("convex_mix weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DomainError("convex_mix weights must sum to one");
    for (const WeylElement& w : ws) reps.push_back(weyl_representative(pair, w));
  }
  if (sel.kind == Selector::Kind::GreedyMaxInner && sel.segments.empty() &&
      sel.direction.size() != pair.coord_dim())
    throw ShapeError("greedy selector direction has wrong size");

  Rng rng(stream_seed(seed, 0x5e1ec7ULL));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const Vec env_dir = pair.abelian_basis().col(0);

  auto direction_at = [&](double t) -> const Vec& {
    const Vec* d = &sel.direction;
    for (const auto& [start, dir] : sel.segments)
      if (start <= t + 1e-12) d = &dir;
    return *d;
  };

  auto choose = [&](double t, const APoint& a) {
    StepDecomposition dec;
    switch (sel.kind) {
      case Selector::Kind::GreedyMaxInner:
      case Selector::Kind::EnvelopeMax: {
        const bool use_norm = sel.kind == Selector::Kind::EnvelopeMax && pair.rank() > 1;
        const Vec d = sel.kind == Selector::Kind::EnvelopeMax ? env_dir : direction_at(t);
        if (polar2 && !use_norm) {
          const double s = d(0) < 0 ? -1.0 : 1.0;
          dec.k = {rotation2(pa2->argmax(a(0), s, src.count, sel.newton_steps))};
        } else {
          double best = -std::numeric_limits<double>::infinity();
          std::size_t bj = 0;
          for (std::size_t j = 0; j < pool.size(); ++j) {
            const APoint v = pool_value(j, a);
            const double score = use_norm ? v.norm() : d.dot(v);
            if (score > best) best = score, bj = j;
          }
          dec.k = {pool[bj]};
        }
        dec.mu = {1.0};
        break;
      }
      case Selector::Kind::ConvexMix: {
        const GroupElement& base = pool[pick(rng)];
        for (std::size_t w = 0; w < reps.size(); ++w) {
          if (sel.weights[w] == 0.0) continue;
          dec.mu.push_back(sel.weights[w]);
          dec.k.push_back(compose(base, reps[w]));
        }
        break;
      }
      case Selector::Kind::Random:
        dec.k = {pool[pick(rng)]};
        dec.mu = {1.0};
        break;
    }
    return dec;
  };

  APoint a = a0;
  for (std::size_t n = 0; n + 1 < nodes.size(); ++n) {
    const double t = nodes[n], h = nodes[n + 1] - nodes[n];
    StepDecomposition dec = choose(t, a);
    std::vector<InducedAffine> aff;
    if (x.is_affine())
      for (const GroupElement& k : dec.k) aff.push_back(induced_affine(pair, x, k));
    auto f = [&](const APoint& b) {
      APoint v = APoint::Zero(b.size());
      for (std::size_t j = 0; j < dec.k.size(); ++j)
        v += dec.mu[j] * (x.is_affine() ? aff[j](b) : induced_field(pair, x, dec.k[j], b));
      return v;
    };
    const APoint k1 = f(a);
    if (scheme == Scheme::Euler) {
      a += h * k1;
    } else {
      const APoint k2 = f(a + h * k1);
      a += 0.5 * h * (k1 + k2);
    }
    check_state(a.norm(), a.allFinite(), t);
    out.a.push_back(a);
    out.steps.push_back(std::move(dec));
  }
  return out;
}

double path_length(const Trajectory& traj) {
  double l = 0.0;
  for (std::size_t i = 1; i < traj.a.size(); ++i) l += (traj.a[i] - traj.a[i - 1]).norm();
  return l;
}

}  // namespace redctl
