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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace redctl {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Independent RNG stream for sample `index` under a master seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;

// exp(k) for skew-Hermitian k.
CMat expm_skew(const CMat& k);

// Principal logarithm of a unitary matrix (skew-Hermitian result).
CMat logm_unitary(const CMat& u);

// Haar-distributed unitary / orthogonal matrices.
CMat haar_unitary(int n, Rng& rng);
Mat haar_orthogonal(int n, Rng& rng);

// Real inner product Re tr(x y^*) and the induced norm.
double frob_inner(const CMat& x, const CMat& y);

// Real vectorization of a complex matrix: [Re(col-major); Im(col-major)].
Vec realify(const CMat& x);

// Orthonormal basis (columns) of the row space / range of `m` with relative rank tolerance.
Mat range_basis(const Mat& m, double rel_tol);

// Minimum-norm least squares solution restricted to singular values above rel_tol * sigma_max.
Vec min_norm_solve(const Mat& a, const Vec& b, double rel_tol);

}  // namespace redctl
