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

#include "redctl/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace redctl {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over a combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CMat expm_skew(const CMat& k) {
  const int n = static_cast<int>(k.rows());
  if (n == 0) return k;
  CMat h = cplx(0.0, -1.0) * k;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const CMat& v = es.eigenvectors();
  Eigen::VectorXcd phase(n);
  for (int i = 0; i < n; ++i) phase(i) = std::polar(1.0, es.eigenvalues()(i));
  return v * phase.asDiagonal() * v.adjoint();
}

CMat logm_unitary(const CMat& u) {
  const int n = static_cast<int>(u.rows());
  if (n == 0) return u;
  Eigen::ComplexSchur<CMat> schur(u);
  const CMat& q = schur.matrixU();
  const CMat& t = schur.matrixT();
  Eigen::VectorXcd logs(n);
  for (int i = 0; i < n; ++i) logs(i) = cplx(0.0, std::arg(t(i, i)));
  CMat l = q * logs.asDiagonal() * q.adjoint();
  return 0.5 * (l - l.adjoint());
}

CMat haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat& r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    const cplx ph = mag > 0 ? r(i, i) / mag : cplx(1.0, 0.0);
    q.col(i) *= ph;
  }
  return q;
}

Mat haar_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat& r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

double frob_inner(const CMat& x, const CMat& y) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) s += (std::conj(x(i, j)) * y(i, j)).real();
  return s;
}

Vec realify(const CMat& x) {
  const Eigen::Index m = x.size();
  Vec v(2 * m);
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      v(idx) = x(i, j).real();
      v(m + idx) = x(i, j).imag();
      ++idx;
    }
  return v;
}

Mat range_basis(const Mat& m, double rel_tol) {
  if (m.size() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  if (smax > 1e-300)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++rank;
  return svd.matrixU().leftCols(rank);
}

Vec min_norm_solve(const Mat& a, const Vec& b, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Vec x = Vec::Zero(a.cols());
  if (smax <= 1e-300) return x;
  Vec ub = svd.matrixU().transpose() * b;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax) x += svd.matrixV().col(i) * (ub(i) / s(i));
  return x;
}

}  // namespace redctl
