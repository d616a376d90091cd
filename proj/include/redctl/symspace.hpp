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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "redctl/errors.hpp"
#include "redctl/linalg.hpp"

namespace redctl {

enum class PairKind { HermitianEVD, RealSVD, PolarDec };

// Element of p. EVD: Hermitian n x n; SVD: real p x q block; polar: real n x 1 column.
// EVD points may carry a trace component; it is invariant under K and ignored by drift charts.
struct PPoint {
  CMat m;
};

// Reduced coordinates. EVD: n diagonal entries; SVD: r diagonal entries; polar: 1 entry.
using APoint = Vec;

// Acts by Ad_K(x) = left * x * right^*. EVD stores the unitary twice.
struct GroupElement {
  CMat left;
  CMat right;
};

struct KElement {
  CMat left;
  CMat right;
};

// Signed permutation acting on reduced coordinates: (w a)_i = sign[i] * a[perm[i]].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  Vec apply(const Vec& a) const;
  Mat matrix() const;
  WeylElement compose(const WeylElement& o) const;  // (this ∘ o)(a) = this(o(a))
  WeylElement inverse() const;
  bool is_identity() const;
  bool operator==(const WeylElement& o) const = default;
};

struct ChamberData {
  std::vector<Vec> simple_roots;       // chamber: <alpha, a> >= 0 for every simple root
  std::vector<Vec> weights;            // fundamental weights, paired with simple_roots
  std::vector<Vec> invariant_directions;  // directions fixed by every Weyl element (unit)
  std::vector<Vec> positive_roots;     // all positive roots, for regularity and wall crossings
};

class PairDescriptor {
 public:
  static PairDescriptor hermitian_evd(int n);
  static PairDescriptor real_svd(int p, int q);
  static PairDescriptor polar(int n);

  PairKind kind() const;
  int n() const;  // EVD and polar size
  int p() const;  // SVD rows
  int q() const;  // SVD cols
  int rank() const;
  int coord_dim() const;
  int ambient_dim() const;
  int k_dim() const;
  int left_dim() const;
  int right_dim() const;
  int rows() const;  // shape of a stored PPoint
  int cols() const;
  std::uint64_t weyl_order() const;
  std::string name() const;

  const ChamberData& chamber() const;
  const std::vector<CMat>& p_basis() const;        // orthonormal chart of p (traceless for EVD)
  const std::vector<KElement>& k_basis() const;    // orthonormal basis of k
  const Mat& abelian_basis() const;                // coord_dim x rank, orthonormal columns

  bool same_as(const PairDescriptor& o) const;

  struct Data;
  const Data& data() const { return *d_; }

 private:
  std::shared_ptr<Data> d_;
};

constexpr std::uint64_t kDefaultWeylCap = 3628800;  // 10!

// ---- points and charts
PPoint zero_point(const PairDescriptor& pair);
PPoint embed(const PairDescriptor& pair, const APoint& a);
APoint project_abelian(const PairDescriptor& pair, const PPoint& x);
Vec ambient_coords(const PairDescriptor& pair, const PPoint& x);
PPoint from_ambient(const PairDescriptor& pair, const Vec& c);
double inner(const PPoint& x, const PPoint& y);
double norm(const PPoint& x);
void check_point(const PairDescriptor& pair, const PPoint& x);
double point_residual(const PairDescriptor& pair, const PPoint& x);

// ---- group and algebra
GroupElement identity_element(const PairDescriptor& pair);
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& k);
GroupElement exp_k(const PairDescriptor& pair, const KElement& k);
KElement log_k(const PairDescriptor& pair, const GroupElement& k);  // principal branch
KElement zero_k(const PairDescriptor& pair);
KElement scale(const KElement& k, double s);
KElement add(const KElement& a, const KElement& b);
Vec k_coords(const PairDescriptor& pair, const KElement& k);
KElement from_k_coords(const PairDescriptor& pair, const Vec& c);
KElement project_k(const PairDescriptor& pair, const KElement& m);  // nearest element of k
double k_norm(const KElement& k);
void check_group(const PairDescriptor& pair, const GroupElement& k);
double group_residual(const PairDescriptor& pair, const GroupElement& k);

PPoint adjoint_action(const PairDescriptor& pair, const GroupElement& k, const PPoint& x);
PPoint adjoint_inverse(const PairDescriptor& pair, const GroupElement& k, const PPoint& x);
PPoint ad_bracket(const PairDescriptor& pair, const KElement& k, const PPoint& x);

// Orthogonal projection of y onto the commutant p_x = {z : [x, z] = 0}.
PPoint project_commutant(const PairDescriptor& pair, const PPoint& x, const PPoint& y);

struct Diagonalization {
  APoint a;  // in the closed chamber
  GroupElement k;
};
Diagonalization diagonalize(const PairDescriptor& pair, const PPoint& x);

// ---- Weyl group and chamber
const std::vector<WeylElement>& weyl_elements(const PairDescriptor& pair,
                                              std::uint64_t cap = kDefaultWeylCap);
WeylElement weyl_identity(const PairDescriptor& pair);
struct Fold {
  APoint a;
  WeylElement w;  // w.apply(input) == a
};
Fold chamber_fold(const PairDescriptor& pair, const APoint& a);
bool in_chamber(const PairDescriptor& pair, const APoint& a, double tol);
// Group element N with project_abelian(Ad_N(embed(a))) = w.apply(a) and Ad_N(embed(a)) = embed(w a).
GroupElement weyl_representative(const PairDescriptor& pair, const WeylElement& w);
std::vector<WeylElement> weyl_stabilizer(const PairDescriptor& pair, const APoint& x, double tol);

std::vector<double> root_values(const PairDescriptor& pair, const APoint& a);
double regularity_margin(const PairDescriptor& pair, const APoint& a);
double default_tol_reg(const APoint& a);

// ---- sampling
GroupElement haar_sample(const PairDescriptor& pair, std::uint64_t seed);
GroupElement haar_sample(const PairDescriptor& pair, Rng& rng);

// Minimal-norm k with [k, p] = y, for y orthogonal to the commutant of a regular p.
KElement ad_inverse_restricted(const PairDescriptor& pair, const PPoint& p, const PPoint& y,
                               double tol_reg = -1.0);

}  // namespace redctl
