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

#include "redctl/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "redctl/errors.hpp"

namespace redctl {

namespace {

struct Span {
  Vec origin;
  Mat basis;
  double scale = 0.0;
};

Span affine_span(const Mat& pts, double rel_tol) {
  Span s;
  s.origin = pts.rowwise().mean();
  Mat c = pts.colwise() - s.origin;
  s.scale = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
  if (s.scale <= 1e-300) {
    s.basis = Mat(pts.rows(), 0);
    return s;
  }
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * std::max(sv(0), 1e-300) * std::sqrt(static_cast<double>(pts.cols())))
      ++rank;
  s.basis = svd.matrixU().leftCols(rank);
  return s;
}

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double l2 = ab.squaredNorm();
  double t = l2 > 0 ? (p - a).dot(ab) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double triangle_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                         const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const Eigen::Vector3d n = (b - a).cross(c - a);
  const double n2 = n.squaredNorm();
  if (n2 > 0) {
    const Eigen::Vector3d proj = p - n * (n.dot(p - a) / n2);
    const double d1 = n.dot((b - a).cross(proj - a));
    const double d2 = n.dot((c - b).cross(proj - b));
    const double d3 = n.dot((a - c).cross(proj - c));
    if (d1 >= 0 && d2 >= 0 && d3 >= 0) return (p - proj).norm();
  }
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c), segment_distance(p, c, a)});
}

void hull_2d(Hull& h, double eps) {
  const int m = static_cast<int>(h.points.cols());
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    if (h.points(0, i) != h.points(0, j)) return h.points(0, i) < h.points(0, j);
    return h.points(1, i) < h.points(1, j);
  });
  auto pt = [&](int i) { return Eigen::Vector2d(h.points(0, i), h.points(1, i)); };
  std::vector<int> hull(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && cross2(pt(hull[k - 2]), pt(hull[k - 1]), pt(idx[i])) <= eps) --k;
    hull[k++] = idx[i];
  }
  for (int i = m - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross2(pt(hull[k - 2]), pt(hull[k - 1]), pt(idx[i])) <= eps) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  h.vertices = hull;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const int a = hull[i], b = hull[(i + 1) % hull.size()];
    const Eigen::Vector2d e = pt(b) - pt(a);
    Vec nrm(2);
    nrm << e.y(), -e.x();  // counter-clockwise order: outward is to the right
    nrm.normalize();
    h.normals.push_back(nrm);
    h.offsets.push_back(nrm.dot(h.points.col(a)));
    h.facets.push_back({a, b});
  }
}

struct Face {
  int a, b, c;
  Eigen::Vector3d n;
  double off;
};

void hull_3d(Hull& h, double eps) {
  const int m = static_cast<int>(h.points.cols());
  auto pt = [&](int i) { return Eigen::Vector3d(h.points.col(i)); };
  int i0 = 0;
  for (int i = 1; i < m; ++i)
    if (h.points(0, i) < h.points(0, i0)) i0 = i;
  int i1 = i0;
  double best = -1;
  for (int i = 0; i < m; ++i) {
    const double d = (pt(i) - pt(i0)).norm();
    if (d > best) best = d, i1 = i;
  }
  int i2 = i0;
  best = -1;
  for (int i = 0; i < m; ++i) {
    const double d = (pt(i) - pt(i0)).cross(pt(i1) - pt(i0)).norm();
    if (d > best) best = d, i2 = i;
  }
  int i3 = i0;
  best = -1;
  const Eigen::Vector3d n012 = (pt(i1) - pt(i0)).cross(pt(i2) - pt(i0));
  for (int i = 0; i < m; ++i) {
    const double d = std::abs(n012.dot(pt(i) - pt(i0)));
    if (d > best) best = d, i3 = i;
  }
  const Eigen::Vector3d centroid = (pt(i0) + pt(i1) + pt(i2) + pt(i3)) / 4.0;
  std::vector<Face> faces;
  auto make = [&](int a, int b, int c) {
    Face f{a, b, c, (pt(b) - pt(a)).cross(pt(c) - pt(a)), 0.0};
    if (f.n.dot(centroid - pt(a)) > 0) {
      std::swap(f.b, f.c);
      f.n = -f.n;
    }
    f.n.normalize();
    f.off = f.n.dot(pt(f.a));
    return f;
  };
  faces.push_back(make(i0, i1, i2));
  faces.push_back(make(i0, i1, i3));
  faces.push_back(make(i0, i2, i3));
  faces.push_back(make(i1, i2, i3));
  for (int i = 0; i < m; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    const Eigen::Vector3d p = pt(i);
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].n.dot(p) - faces[f].off > eps) visible[f] = 1, any = true;
    if (!any) continue;
    std::map<std::pair<int, int>, int> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const int v[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) edges[{v[e], v[(e + 1) % 3]}]++;
    }
    std::vector<Face> next;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (const auto& [e, cnt] : edges) {
      if (edges.count({e.second, e.first})) continue;
      Face f{e.first, e.second, i, (pt(e.second) - pt(e.first)).cross(p - pt(e.first)), 0.0};
      const double nn = f.n.norm();
      if (nn <= 0) continue;
      f.n /= nn;
      f.off = f.n.dot(pt(f.a));
      next.push_back(f);
    }
    faces.swap(next);
  }
  std::vector<int> verts;
  for (const Face& f : faces) {
    verts.insert(verts.end(), {f.a, f.b, f.c});
    h.normals.push_back(Vec(f.n));
    h.offsets.push_back(f.off);
    h.facets.push_back({f.a, f.b, f.c});
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  h.vertices = verts;
}

}  // namespace

int affine_dimension(const Mat& points, double rel_tol) {
  if (points.cols() == 0) return -1;
  return static_cast<int>(affine_span(points, rel_tol).basis.cols());
}

Hull convex_hull(const Mat& points, double rel_tol) {
  if (points.cols() == 0) throw DomainError("convex hull of an empty point set");
  Span s = affine_span(points, rel_tol);
  Hull h;
  h.dim = static_cast<int>(s.basis.cols());
  if (h.dim > 3) throw CapacityError("exact hulls are limited to affine dimension 3");
  h.origin = s.origin;
  h.basis = s.basis;
  h.points = s.basis.transpose() * (points.colwise() - s.origin);
  const double eps = 1e-12 * std::max(1.0, s.scale);
  const int m = static_cast<int>(points.cols());
  if (h.dim == 0) {
    h.vertices = {0};
  } else if (h.dim == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < m; ++i) {
      if (h.points(0, i) < h.points(0, lo)) lo = i;
      if (h.points(0, i) > h.points(0, hi)) hi = i;
    }
    h.vertices = {lo, hi};
    h.normals = {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)};
    h.offsets = {-h.points(0, lo), h.points(0, hi)};
    h.facets = {{lo}, {hi}};
  } else if (h.dim == 2) {
    hull_2d(h, eps * eps);
  } else {
    hull_3d(h, eps);
  }
  return h;
}

bool Hull::contains(const Vec& x, double tol) const {
  const Vec c = x - origin;
  const Vec y = basis.transpose() * c;
  if ((c - basis * y).norm() > tol) return false;
  for (std::size_t f = 0; f < normals.size(); ++f)
    if (normals[f].dot(y) - offsets[f] > tol) return false;
  return true;
}

double Hull::distance(const Vec& x) const {
  const Vec c = x - origin;
  const Vec y = basis.transpose() * c;
  const double off_span = (c - basis * y).norm();
  double in_span = 0.0;
  bool inside = true;
  for (std::size_t f = 0; f < normals.size(); ++f)
    if (normals[f].dot(y) - offsets[f] > 0) inside = false;
  if (dim == 0) {
    in_span = 0.0;
  } else if (!inside) {
    in_span = std::numeric_limits<double>::infinity();
    if (dim == 1) {
      in_span = std::max(points(0, vertices[0]) - y(0), y(0) - points(0, vertices[1]));
    } else if (dim == 2) {
      for (const auto& f : facets)
        in_span = std::min(in_span, segment_distance(y, points.col(f[0]), points.col(f[1])));
    } else {
      for (const auto& f : facets)
        in_span = std::min(in_span, triangle_distance(y, points.col(f[0]), points.col(f[1]),
                                                      points.col(f[2])));
    }
  }
  return std::hypot(off_span, in_span);
}

}  // namespace redctl
