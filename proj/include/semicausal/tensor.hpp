// Copyright 2026 The semicausal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "semicausal/types.hpp"

// Dense tensor-leg linear algebra. All leg bookkeeping is explicit: a
// multipartite operator is an ordinary dense matrix plus a dims vector, and
// every reordering happens through index arithmetic or an explicit flip
// matrix, never through implicit reinterpretation.

namespace semicausal {

/// Kronecker product, (a ⊗ b)(i*rb+k, j*cb+l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(),
                     cb = b.cols();
  Mat<Scalar> out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b.derived();
  return out;
}

/// Row-major stacking of a matrix into a column vector. With this convention
/// vec(A X B) = (A ⊗ B^T) vec(X).
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> vec(const Mat<Scalar>& x) {
  Eigen::Vector<Scalar, Eigen::Dynamic> v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

template <typename Scalar>
Mat<Scalar> unvec(const Eigen::Vector<Scalar, Eigen::Dynamic>& v,
                  Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
  Mat<Scalar> x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(i * cols + j);
  return x;
}

/// Unnormalized maximally entangled vector Σ_i |i⟩ ⊗ |i⟩ on C^d ⊗ C^d.
CVec omega(int d);

/// Trace out the leading d-dimensional leg. Accepts rectangular operators
/// X : C^d ⊗ C^n -> C^d ⊗ C^m, returning the m x n contraction
/// out(r, c) = Σ_a X(a*m + r, a*n + c).
template <typename Scalar>
Mat<Scalar> ptrace_first(const Mat<Scalar>& x, int d) {
  if (d <= 0 || x.rows() % d != 0 || x.cols() % d != 0)
    throw DimensionError("ptrace_first: dimensions not divisible by leg");
  const Eigen::Index m = x.rows() / d, n = x.cols() / d;
  Mat<Scalar> out = Mat<Scalar>::Zero(m, n);
  for (int a = 0; a < d; ++a) out += x.block(a * m, a * n, m, n);
  return out;
}

/// Trace out the trailing d-dimensional leg: out(r, c) = Σ_e X(r*d+e, c*d+e).
template <typename Scalar>
Mat<Scalar> ptrace_last(const Mat<Scalar>& x, int d) {
  if (d <= 0 || x.rows() % d != 0 || x.cols() % d != 0)
    throw DimensionError("ptrace_last: dimensions not divisible by leg");
  const Eigen::Index m = x.rows() / d, n = x.cols() / d;
  Mat<Scalar> out(m, n);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Scalar s{};
      for (int e = 0; e < d; ++e) s += x(r * d + e, c * d + e);
      out(r, c) = s;
    }
  return out;
}

/// Trace out one leg of a square operator on ⊗_k C^{dims[k]}.
template <typename Scalar>
Mat<Scalar> ptrace_leg(const Mat<Scalar>& x, const std::vector<int>& dims,
                       int leg) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (x.rows() != total || x.cols() != total)
    throw DimensionError("ptrace_leg: operator does not match dims");
  if (leg < 0 || leg >= static_cast<int>(dims.size()))
    throw DimensionError("ptrace_leg: bad leg index");
  Eigen::Index pre = 1, post = 1;
  for (int k = 0; k < leg; ++k) pre *= dims[k];
  for (int k = leg + 1; k < static_cast<int>(dims.size()); ++k)
    post *= dims[k];
  const int d = dims[leg];
  Mat<Scalar> out = Mat<Scalar>::Zero(pre * post, pre * post);
  for (Eigen::Index p1 = 0; p1 < pre; ++p1)
    for (Eigen::Index q1 = 0; q1 < post; ++q1)
      for (Eigen::Index p2 = 0; p2 < pre; ++p2)
        for (Eigen::Index q2 = 0; q2 < post; ++q2) {
          Scalar s{};
          for (int i = 0; i < d; ++i)
            s += x((p1 * d + i) * post + q1, (p2 * d + i) * post + q2);
          out(p1 * post + q1, p2 * post + q2) = s;
        }
  return out;
}

/// Sandwich one leg with a fixed vector: (1 ⊗ ⟨ψ| ⊗ 1) X (1 ⊗ |ψ⟩ ⊗ 1).
template <typename Scalar>
Mat<Scalar> project_leg(const Mat<Scalar>& x, const std::vector<int>& dims,
                        int leg,
                        const Eigen::Vector<Scalar, Eigen::Dynamic>& psi) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (x.rows() != total || x.cols() != total)
    throw DimensionError("project_leg: operator does not match dims");
  const int d = dims[leg];
  if (psi.size() != d) throw DimensionError("project_leg: vector mismatch");
  Eigen::Index pre = 1, post = 1;
  for (int k = 0; k < leg; ++k) pre *= dims[k];
  for (int k = leg + 1; k < static_cast<int>(dims.size()); ++k)
    post *= dims[k];
  Mat<Scalar> out = Mat<Scalar>::Zero(pre * post, pre * post);
  for (Eigen::Index p1 = 0; p1 < pre; ++p1)
    for (Eigen::Index q1 = 0; q1 < post; ++q1)
      for (Eigen::Index p2 = 0; p2 < pre; ++p2)
        for (Eigen::Index q2 = 0; q2 < post; ++q2) {
          Scalar s{};
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              s += Eigen::numext::conj(psi(i)) * psi(j) *
                   x((p1 * d + i) * post + q1, (p2 * d + j) * post + q2);
          out(p1 * post + q1, p2 * post + q2) = s;
        }
  return out;
}

/// Weighted trace of the trailing leg against a state rho on that leg:
/// out(r, c) = Σ_{e,e'} rho(e', e) X((r,e), (c,e')).
template <typename Scalar>
Mat<Scalar> weighted_ptrace_last(const Mat<Scalar>& x, const Mat<Scalar>& rho) {
  const Eigen::Index d = rho.rows();
  if (rho.cols() != d || x.rows() % d != 0 || x.cols() % d != 0)
    throw DimensionError("weighted_ptrace_last: dimension mismatch");
  const Eigen::Index m = x.rows() / d, n = x.cols() / d;
  Mat<Scalar> out(m, n);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Scalar s{};
      for (Eigen::Index e = 0; e < d; ++e)
        for (Eigen::Index ep = 0; ep < d; ++ep)
          s += rho(ep, e) * x(r * d + e, c * d + ep);
      out(r, c) = s;
    }
  return out;
}

/// Transpose the leading d_A-dimensional leg on both sides:
/// out((a,r), (a',c)) = X((a',r), (a,c)). Works for rectangular operators
/// whose domain and codomain both carry the A leg in front.
template <typename Scalar>
Mat<Scalar> partial_transpose_first(const Mat<Scalar>& x, int d_A) {
  if (d_A <= 0 || x.rows() % d_A != 0 || x.cols() % d_A != 0)
    throw DimensionError("partial_transpose_first: dimension mismatch");
  const Eigen::Index m = x.rows() / d_A, n = x.cols() / d_A;
  Mat<Scalar> out(x.rows(), x.cols());
  for (int a = 0; a < d_A; ++a)
    for (int ap = 0; ap < d_A; ++ap)
      out.block(a * m, ap * n, m, n) = x.block(ap * m, a * n, m, n);
  return out;
}

/// Flip permutation |a⟩ ⊗ |b⟩ -> |b⟩ ⊗ |a⟩ as an explicit matrix,
/// C^{d_A} ⊗ C^{d_B} -> C^{d_B} ⊗ C^{d_A}.
template <typename Scalar>
Mat<Scalar> flip_t(int d_A, int d_B) {
  Mat<Scalar> f = Mat<Scalar>::Zero(d_A * d_B, d_A * d_B);
  for (int a = 0; a < d_A; ++a)
    for (int b = 0; b < d_B; ++b) f(b * d_A + a, a * d_B + b) = Scalar(1);
  return f;
}

CMat flip(int d_A, int d_B);

/// Bipartite partial trace of a square operator on H_A ⊗ H_B; leg is 'A' or
/// 'B'. tr_A satisfies tr[X tr_A(rho)] = tr[(1_A ⊗ X) rho].
CMat partial_trace(const CMat& x, const BipartiteSystem& sys, char leg);

/// Partial transpose on the A leg of a square operator over H_A ⊗ H_B.
CMat partial_transpose(const CMat& x, const BipartiteSystem& sys);

struct SpectralDecomp {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // orthonormal columns
};

/// Eigendecomposition of a (symmetrized) Hermitian matrix.
SpectralDecomp herm_eig(const CMat& m);

/// Positive semidefinite square root. Eigenvalues within -slack(tol, ||m||)
/// of zero are clamped; anything more negative throws NotPsd.
CMat psd_sqrt(const CMat& m, double tol = kDefaultTol);

/// Matrix exponential of t*m, fixed order-13 diagonal Pade approximant with
/// scaling and squaring.
template <typename Scalar>
Mat<Scalar> expm(const Mat<Scalar>& m, double t = 1.0) {
  using M = Mat<Scalar>;
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionError("expm: matrix must be square");
  if (n == 0) return m;
  M a = t * m;
  // 1-norm based scaling; theta_13 from the standard order-13 analysis.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const double theta13 = 5.371920351148152;
  int s = 0;
  if (norm1 > theta13) {
    s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    s = std::min(s, 64);
    a /= std::pow(2.0, s);
  }
  static const double b[] = {64764752532480000.0,
                             32382376266240000.0,
                             7771770303897600.0,
                             1187353796428800.0,
                             129060195264000.0,
                             10559470521600.0,
                             670442572800.0,
                             33522128640.0,
                             1323241920.0,
                             40840800.0,
                             960960.0,
                             16380.0,
                             182.0,
                             1.0};
  const M id = M::Identity(n, n);
  const M a2 = a * a;
  const M a4 = a2 * a2;
  const M a6 = a4 * a2;
  M u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
             b[5] * a4 + b[3] * a2 + b[1] * id);
  M v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
        b[2] * a2 + b[0] * id;
  M r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

struct LstsqResult {
  CMat solution;    // minimum-norm least-squares solution
  double residual;  // ||coeff * solution - rhs||_F
};

/// Minimum-norm least-squares solve via SVD pseudoinverse. Singular values
/// below max(rows, cols) * eps * sigma_max are treated as zero.
LstsqResult lstsq_solve(const CMat& coeff, const CMat& rhs);

/// Complete a partial isometry to a unitary. Rectangular input is embedded in
/// the smallest square; the result agrees with v on the support of v†v.
/// Throws NotPartialIsometry if the singular values are not within tol of
/// {0, 1} or the completion fails.
CMat extend_isometry_to_unitary(const CMat& v, double tol = 1e-8);

}  // namespace semicausal
