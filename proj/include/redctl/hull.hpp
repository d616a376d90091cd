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

#pragma once

#include <vector>

#include "redctl/linalg.hpp"

namespace redctl {

// Convex hull of a point set whose affine span has dimension at most 3.
struct Hull {
  int dim = 0;             // dimension of the affine span
  Vec origin;              // affine span: x = origin + basis * y
  Mat basis;               // ambient_dim x dim, orthonormal columns
  std::vector<Vec> normals;       // facet normals in span coordinates (unit, outward)
  std::vector<double> offsets;    // facet: normal . y <= offset
  std::vector<std::vector<int>> facets;  // vertex indices per facet (segments or triangles)
  std::vector<int> vertices;             // indices into the input of hull vertices
  Mat points;                            // span coordinates of all input points (dim x m)

  bool contains(const Vec& x, double tol) const;
  double distance(const Vec& x) const;  // Euclidean distance from x to the hull
};

// Throws CapacityError when the affine span has dimension above 3.
Hull convex_hull(const Mat& points, double rel_tol = 1e-10);

// Effective dimension of the affine span of the columns.
int affine_dimension(const Mat& points, double rel_tol = 1e-10);

}  // namespace redctl
