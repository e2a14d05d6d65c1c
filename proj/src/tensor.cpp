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

#include "semicausal/tensor.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace semicausal {

CVec omega(int d) {
  CVec w = CVec::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) w(i * d + i) = 1.0;
  return w;
}

CMat flip(int d_A, int d_B) { return flip_t<Complex>(d_A, d_B); }

CMat partial_trace(const CMat& x, const BipartiteSystem& sys, char leg) {
  const Eigen::Index n = static_cast<Eigen::Index>(sys.dim());
  if (x.rows() != n || x.cols() != n)
    throw DimensionError("partial_trace: operator does not match system");
  if (leg == 'A') return ptrace_first(x, sys.d_A);
  if (leg == 'B') return ptrace_last(x, sys.d_B);
  throw DimensionError("partial_trace: leg must be 'A' or 'B'");
}

CMat partial_transpose(const CMat& x, const BipartiteSystem& sys) {
  const Eigen::Index n = static_cast<Eigen::Index>(sys.dim());
  if (x.rows() != n || x.cols() != n)
    throw DimensionError("partial_transpose: operator does not match system");
  return partial_transpose_first(x, sys.d_A);
}

SpectralDecomp herm_eig(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("herm_eig: square required");
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver did not converge");
  return SpectralDecomp{solver.eigenvalues(), solver.eigenvectors()};
}

CMat psd_sqrt(const CMat& m, double tol) {
  const SpectralDecomp eig = herm_eig(m);
  const double eps = slack(tol, m.norm());
  RVec lam = eig.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -eps)
      throw NotPsd("psd_sqrt: eigenvalue " + std::to_string(lam(i)) +
                   " below tolerance");
    if (lam(i) < 0.0) lam(i) = 0.0;
  }
  return eig.eigenvectors * lam.cwiseSqrt().asDiagonal() *
         eig.eigenvectors.adjoint();
}

LstsqResult lstsq_solve(const CMat& coeff, const CMat& rhs) {
  if (coeff.rows() != rhs.rows())
    throw DimensionError("lstsq_solve: row mismatch between coeff and rhs");
  if (coeff.cols() == 0) {
    return LstsqResult{CMat::Zero(0, rhs.cols()), rhs.norm()};
  }
  Eigen::BDCSVD<CMat> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(static_cast<double>(std::max(coeff.rows(), coeff.cols())) *
                   Eigen::NumTraits<double>::epsilon());
  CMat sol = svd.solve(rhs);
  const double residual = (coeff * sol - rhs).norm();
  return LstsqResult{std::move(sol), residual};
}

CMat extend_isometry_to_unitary(const CMat& v, double tol) {
  const Eigen::Index n = std::max(v.rows(), v.cols());
  if (n == 0) return CMat::Identity(0, 0);
  if (v.size() > 0) {
    Eigen::BDCSVD<CMat> svd(v);
    const RVec sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (std::min(std::abs(sv(i)), std::abs(sv(i) - 1.0)) > tol)
        throw NotPartialIsometry(
            "extend_isometry_to_unitary: singular value " +
            std::to_string(sv(i)) + " not in {0, 1}");
    }
  }
  CMat w0 = CMat::Zero(n, n);
  w0.topLeftCorner(v.rows(), v.cols()) = v;

  // Orthonormal bases of the kernel (I - v†v) and cokernel (I - vv†);
  // projector spectra are {0, 1}, so the 0.5 cutoff is unambiguous.
  const SpectralDecomp dom = herm_eig(CMat::Identity(n, n) - w0.adjoint() * w0);
  const SpectralDecomp ran = herm_eig(CMat::Identity(n, n) - w0 * w0.adjoint());
  std::vector<Eigen::Index> dom_idx, ran_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dom.eigenvalues(i) > 0.5) dom_idx.push_back(i);
    if (ran.eigenvalues(i) > 0.5) ran_idx.push_back(i);
  }
  if (dom_idx.size() != ran_idx.size())
    throw NotPartialIsometry(
        "extend_isometry_to_unitary: kernel and cokernel ranks differ");
  CMat w = w0;
  for (size_t k = 0; k < dom_idx.size(); ++k)
    w += ran.eigenvectors.col(ran_idx[k]) *
         dom.eigenvectors.col(dom_idx[k]).adjoint();
  if ((w.adjoint() * w - CMat::Identity(n, n)).norm() >
      tol * (1.0 + std::sqrt(static_cast<double>(n))))
    throw NotPartialIsometry(
        "extend_isometry_to_unitary: completion is not unitary");
  // Polar projection onto the unitary group removes the tol-level defect
  // inherited from the input's singular values.
  Eigen::BDCSVD<CMat> polar(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return polar.matrixU() * polar.matrixV().adjoint();
}

}  // namespace semicausal
