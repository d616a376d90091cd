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

#include <functional>
#include <optional>
#include <vector>

#include "redctl/hull.hpp"
#include "redctl/symspace.hpp"

namespace redctl {

enum class DriftKind { Affine, Bloch, Custom };

// Drift vector field on p. Affine fields act on ambient chart coordinates:
// X(p) = from_ambient(matrix * ambient_coords(p) + offset).
class DriftField {
 public:
  static DriftField affine(Mat matrix, Vec offset);
  static DriftField bloch(double gamma_transverse, double gamma_longitudinal = 1.0);
  static DriftField custom(std::function<PPoint(const PPoint&)> evaluator,
                           std::optional<double> lipschitz = std::nullopt);
  static DriftField scaled_identity(const PairDescriptor& pair, double s);  // X(p) = s p

  DriftKind kind() const { return kind_; }
  PPoint operator()(const PairDescriptor& pair, const PPoint& x) const;

  // Affine form in ambient coordinates (available for Affine and Bloch).
  bool is_affine() const { return kind_ != DriftKind::Custom; }
  const Mat& matrix() const;
  const Vec& offset() const;

  // Bounds with ||X(p)|| <= c1 ||p|| + c2 and Lipschitz constant l.
  double lipschitz(const PairDescriptor& pair) const;
  double growth_c1(const PairDescriptor& pair) const;
  double growth_c2(const PairDescriptor& pair) const;

  double bloch_gamma_transverse() const { return bloch_g_; }
  double bloch_gamma_longitudinal() const { return bloch_l_; }

 private:
  void check_pair(const PairDescriptor& pair) const;

  DriftKind kind_ = DriftKind::Affine;
  Mat matrix_;
  Vec offset_;
  double bloch_g_ = 0.0, bloch_l_ = 0.0;
  std::function<PPoint(const PPoint&)> eval_;
  std::optional<double> lipschitz_;
};

// X_K(a) = project_abelian(Ad_K^{-1}(X(Ad_K(embed(a))))).
APoint induced_field(const PairDescriptor& pair, const DriftField& x, const GroupElement& k,
                     const APoint& a);

// For affine X: X_K(a) = mat * a + off on reduced coordinates.
struct InducedAffine {
  Mat mat;
  Vec off;
  APoint operator()(const APoint& a) const { return mat * a + off; }
};
InducedAffine induced_affine(const PairDescriptor& pair, const DriftField& x,
                             const GroupElement& k);

// Where group elements come from when sampling derv.
struct KSource {
  enum class Kind { Haar, AngleGrid } kind = Kind::Haar;
  int count = 256;
  std::uint64_t seed = 0;

  static KSource haar(int count, std::uint64_t seed) { return {Kind::Haar, count, seed}; }
  static KSource angle_grid(int count = 4096) { return {Kind::AngleGrid, count, 0}; }
};
// Haar draws use independent per-index streams; AngleGrid is SO(2) rotations by 2*pi*i/count.
std::vector<GroupElement> sample_group(const PairDescriptor& pair, const KSource& src);
GroupElement rotation2(double angle);

struct DervEntry {
  GroupElement k;
  APoint v;
};

struct DervSample {
  APoint a;
  std::vector<DervEntry> entries;
  std::optional<Hull> hull;

  Mat values() const;  // coord_dim x entries
};

DervSample derv_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       int n_samples, std::uint64_t seed, bool with_hull = false);
DervSample derv_sample(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       const KSource& src, bool with_hull = false);

DervSample derv_strict_filter(const PairDescriptor& pair, const DriftField& x,
                              const DervSample& sample, double tol);

// Local ascent of f over the group in exponential coordinates (central differences,
// backtracking line search).
struct AscentResult {
  GroupElement k;
  double value = 0.0;
  int iterations = 0;
};
AscentResult group_ascent(const PairDescriptor& pair,
                          const std::function<double(const GroupElement&)>& f,
                          const GroupElement& start, int max_iter = 200);

struct SpeedLimit {
  double value = 0.0;
  GroupElement k;
};
// Certified lower bound on c(a) = max_K ||X_K(a)|| (best value found).
SpeedLimit speed_limit(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                       int n_restarts, std::uint64_t seed);

// Support point of derv(a) in direction d: sample start plus local ascent.
DervEntry support_point(const PairDescriptor& pair, const DriftField& x, const APoint& a,
                        const Vec& d, const GroupElement& start);

// SO(2) closed form for affine drifts on polar(2): X_{rot(t)}(a) as a trigonometric function of t.
struct Polar2Affine {
  Mat m;   // 2x2 ambient matrix
  Vec b;   // ambient offset
  double value(double angle, double a) const;
  double d1(double angle, double a) const;
  double d2(double angle, double a) const;
  // Maximizer of s * value over the angle grid with Newton refinement.
  double argmax(double a, double s, int grid, int newton_steps) const;

 private:
  mutable std::vector<double> quad_, lin_;  // grid tables of u^T m u and u^T b
};
Polar2Affine polar2_affine(const PairDescriptor& pair, const DriftField& x);

}  // namespace redctl
