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

#include "semicausal/choi.hpp"

namespace semicausal {

CMat superop_to_choi(const CMat& m, int in_dim, int out_dim) {
  const Eigen::Index in2 = static_cast<Eigen::Index>(in_dim) * in_dim;
  const Eigen::Index out2 = static_cast<Eigen::Index>(out_dim) * out_dim;
  if (m.rows() != out2 || m.cols() != in2)
    throw DimensionError("superop_to_choi: matrix does not match dims");
  CMat choi(static_cast<Eigen::Index>(in_dim) * out_dim,
            static_cast<Eigen::Index>(in_dim) * out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j)
      for (int k = 0; k < out_dim; ++k)
        for (int l = 0; l < out_dim; ++l)
          choi(i * out_dim + k, j * out_dim + l) =
              m(k * out_dim + l, i * in_dim + j);
  return choi;
}

CMat choi_to_superop(const CMat& choi, int in_dim, int out_dim) {
  const Eigen::Index side = static_cast<Eigen::Index>(in_dim) * out_dim;
  if (choi.rows() != side || choi.cols() != side)
    throw DimensionError("choi_to_superop: matrix does not match dims");
  CMat m(static_cast<Eigen::Index>(out_dim) * out_dim,
         static_cast<Eigen::Index>(in_dim) * in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j)
      for (int k = 0; k < out_dim; ++k)
        for (int l = 0; l < out_dim; ++l)
          m(k * out_dim + l, i * in_dim + j) =
              choi(i * out_dim + k, j * out_dim + l);
  return m;
}

Superop choi_of_map(const CMat& m, int in_dim, int out_dim) {
  return Superop{in_dim, out_dim, superop_to_choi(m, in_dim, out_dim)};
}

CMat apply_choi(const Superop& s, const CMat& rho) {
  if (rho.rows() != s.in_dim || rho.cols() != s.in_dim)
    throw DimensionError("apply_choi: state does not match input dimension");
  const CMat lifted =
      kron(rho.transpose(), CMat::Identity(s.out_dim, s.out_dim)) * s.choi;
  return ptrace_first(lifted, s.in_dim);
}

CMat superop_matrix(const std::function<CMat(const CMat&)>& f, int in_dim,
                    int out_dim) {
  const Eigen::Index in2 = static_cast<Eigen::Index>(in_dim) * in_dim;
  const Eigen::Index out2 = static_cast<Eigen::Index>(out_dim) * out_dim;
  CMat m(out2, in2);
  CMat unit = CMat::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) {
      unit(i, j) = 1.0;
      m.col(i * in_dim + j) = vec<Complex>(f(unit));
      unit(i, j) = 0.0;
    }
  return m;
}

CpResult is_cp(const Superop& s, double tol) {
  const SpectralDecomp eig = herm_eig(s.choi);
  const double min_eig = eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0;
  return CpResult{min_eig >= -slack(tol, s.choi.norm()), min_eig};
}

TpResult is_tp(const Superop& s, double tol) {
  const CMat reduced = ptrace_last(s.choi, s.out_dim);
  const double residual =
      (reduced - CMat::Identity(s.in_dim, s.in_dim)).norm();
  return TpResult{residual <= slack(tol, s.choi.norm()), residual};
}

CondCpResult cond_cp_check(const CMat& l_choi, int dim, double tol) {
  const Eigen::Index side = static_cast<Eigen::Index>(dim) * dim;
  if (l_choi.rows() != side || l_choi.cols() != side)
    throw DimensionError("cond_cp_check: matrix does not match dim^2");
  const double herm_residual = (l_choi - l_choi.adjoint()).norm();
  const CMat sym = 0.5 * (l_choi + l_choi.adjoint());
  const CVec w = omega(dim);
  const CMat p_perp = CMat::Identity(side, side) -
                      (w * w.adjoint()) / static_cast<double>(dim);
  const SpectralDecomp eig = herm_eig(p_perp * sym * p_perp);
  const double min_eig = eig.eigenvalues(0);
  const double eps = slack(tol, l_choi.norm());
  CondCpResult r;
  r.herm_residual = herm_residual;
  r.min_eig = min_eig;
  r.hermitian_ok = herm_residual <= eps;
  r.psd_ok = min_eig >= -eps;
  r.ok = r.hermitian_ok && r.psd_ok;
  return r;
}

CVec classical_choi_vec(const CMat& m) {
  if (m.imag().norm() > 1e-12)
    throw InvariantViolation("classical_choi_vec: matrix has complex entries");
  const int d_B = static_cast<int>(m.rows());
  const int d_A = static_cast<int>(m.cols());
  CVec x(static_cast<Eigen::Index>(d_A) * d_B);
  for (int a = 0; a < d_A; ++a)
    for (int b = 0; b < d_B; ++b) x(a * d_B + b) = m(b, a);
  return x;
}

CMat classical_choi_unvec(const CVec& x, int d_A, int d_B) {
  if (x.size() != static_cast<Eigen::Index>(d_A) * d_B)
    throw DimensionError("classical_choi_unvec: size mismatch");
  CMat m(d_B, d_A);
  for (int a = 0; a < d_A; ++a)
    for (int b = 0; b < d_B; ++b) m(b, a) = x(a * d_B + b);
  return m;
}

}  // namespace semicausal
