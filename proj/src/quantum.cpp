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

#include "semicausal/quantum.hpp"

#include <cmath>

#include "semicausal/random.hpp"
#include "semicausal/tensor.hpp"

namespace semicausal {

namespace {

constexpr Complex kI(0.0, 1.0);

CMat symmetrize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

void SemicausalNormalForm::validate(double tol) const {
  const Eigen::Index nu = static_cast<Eigen::Index>(d_B) * d_E;
  if (U.rows() != nu || U.cols() != nu)
    throw DimensionError("SemicausalNormalForm: U shape");
  if (A.rows() != static_cast<Eigen::Index>(d_A) * d_E || A.cols() != d_A)
    throw DimensionError("SemicausalNormalForm: A shape");
  if (B.rows() != static_cast<Eigen::Index>(d_B) * d_E || B.cols() != d_B)
    throw DimensionError("SemicausalNormalForm: B shape");
  if (K_A.rows() != d_A || K_A.cols() != d_A)
    throw DimensionError("SemicausalNormalForm: K_A shape");
  if (H_B.rows() != d_B || H_B.cols() != d_B)
    throw DimensionError("SemicausalNormalForm: H_B shape");
  if ((U.adjoint() * U - CMat::Identity(nu, nu)).norm() >
      slack(tol, std::sqrt(static_cast<double>(nu))))
    throw InvariantViolation("SemicausalNormalForm: U is not unitary");
  if ((H_B - H_B.adjoint()).norm() > slack(tol, H_B.norm()))
    throw InvariantViolation("SemicausalNormalForm: H_B is not Hermitian");
  if (std::abs(H_B.trace()) > slack(tol, H_B.norm()))
    throw InvariantViolation("SemicausalNormalForm: H_B is not traceless");
}

CheckReport check_semicausal_generator(const CMat& l,
                                       const BipartiteSystem& sys,
                                       Picture picture, double tol) {
  const int dA = sys.d_A, dB = sys.d_B;
  const int d = sys.dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  if (l.rows() != d2 || l.cols() != d2)
    throw DimensionError("check_semicausal_generator: matrix side must be "
                         "(d_A d_B)^2");
  const CMat lc = superop_to_choi(l, d, d);
  const auto cc = cond_cp_check(lc, d, tol);
  CheckReport rep;
  rep.herm_residual = cc.herm_residual;
  rep.min_cond_cp_eig = cc.min_eig;
  rep.hermitian_ok = cc.hermitian_ok;
  rep.cond_cp_ok = cc.psd_ok;

  const CMat lh = symmetrize(lc);
  const double eps = slack(tol, lc.norm());
  const std::vector<int> dims{dA, dB, dA, dB};
  CMat la;
  if (picture == Picture::heisenberg) {
    // Trace the input B leg; the remainder must factor as L^A ⊗ 1 on the
    // output B leg. The B-averaged candidate is the least-squares factor.
    const CMat t1 = ptrace_leg(lh, dims, 1);
    la = ptrace_leg(t1, {dA, dA, dB}, 2) / static_cast<double>(dB);
    rep.semicausal_residual =
        (t1 - kron(la, CMat::Identity(dB, dB))).norm();
    rep.trace_or_unital_residual = ptrace_first(la, dA).norm();
  } else {
    // Trace the output B leg and flip the input pair; the remainder must
    // factor as 1_B ⊗ L^A.
    const CMat t2 = ptrace_leg(lh, dims, 3);
    const CMat f = kron(flip(dA, dB), CMat::Identity(dA, dA));
    const CMat y = f * t2 * f.adjoint();
    la = ptrace_leg(y, {dB, dA, dA}, 0) / static_cast<double>(dB);
    rep.semicausal_residual = (y - kron(CMat::Identity(dB, dB), la)).norm();
    rep.trace_or_unital_residual = ptrace_last(la, dA).norm();
  }
  rep.semicausal_ok = rep.semicausal_residual <= eps;
  rep.trace_or_unital_ok = rep.trace_or_unital_residual <= eps;
  rep.reduced_choi = la;
  return rep;
}

SemicausalGenerator synthesize_semicausal(const SemicausalNormalForm& nf) {
  nf.validate();
  const int dA = nf.d_A, dB = nf.d_B, dE = nf.d_E;
  const int d = dA * dB;
  const CMat id_a = CMat::Identity(dA, dA);
  const CMat id_b = CMat::Identity(dB, dB);

  const CMat v = kron(id_a, nf.U) * kron(nf.A, id_b) + kron(id_a, nf.B);
  const CMat k = kron(id_a, nf.B.adjoint() * nf.U) * kron(nf.A, id_b) +
                 0.5 * kron(id_a, nf.B.adjoint() * nf.B) +
                 kron(nf.K_A, id_b) + kI * kron(id_a, nf.H_B);

  GklsForm gkls;
  gkls.dim = d;
  gkls.K = k;
  for (int j = 0; j < dE; ++j) {
    CMat lj(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) lj(r, c) = v(r * dE + j, c);
    gkls.kraus.push_back(std::move(lj));
  }

  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  const CMat id = CMat::Identity(d, d);
  CMat heis = CMat::Zero(d2, d2);
  CMat schr = CMat::Zero(d2, d2);
  for (const CMat& lj : gkls.kraus) {
    heis += kron(lj.adjoint(), lj.transpose());
    schr += kron(lj, lj.conjugate());
  }
  heis -= kron(k.adjoint(), id) + kron(id, k.transpose());
  schr -= kron(k, id) + kron(id, k.conjugate());
  return SemicausalGenerator{std::move(heis), std::move(schr),
                             std::move(gkls)};
}

CMat synthesize_semicausal(const SemicausalNormalForm& nf, Picture picture) {
  return synthesize_semicausal(nf).in(picture);
}

std::pair<SemicausalNormalForm, ExtractionTrace> extract_normal_form(
    const CMat& l, const BipartiteSystem& sys, double tol) {
  const int dA = sys.d_A, dB = sys.d_B;
  const int d = sys.dim();
  const int dE = d * d;
  const auto rep = check_semicausal_generator(l, sys, Picture::heisenberg, tol);
  if (!rep.generator_ok())
    throw CheckFailed(
        "extract_normal_form: generator check failed (hermiticity " +
        std::to_string(rep.herm_residual) + ", conditional-CP eigenvalue " +
        std::to_string(rep.min_cond_cp_eig) + ", semicausality " +
        std::to_string(rep.semicausal_residual) + ")");

  const CMat lh = symmetrize(superop_to_choi(l, d, d));
  const Eigen::Index side = lh.rows();
  const CVec w = omega(d);
  const CMat p = (w * w.adjoint()) / static_cast<double>(d);
  const CMat p_perp = CMat::Identity(side, side) - p;

  ExtractionTrace tr;
  tr.beta_index = 0;
  tr.xi_index = 0;

  // CP part: tau is PSD off the entangled direction and carries the jump
  // operators; its square root gives a Stinespring operator with
  // environment A1 B1 A2 B2.
  tr.tau = symmetrize(p_perp * lh * p_perp);
  const CMat s = psd_sqrt(tr.tau, tol);
  CMat v = CMat::Zero(static_cast<Eigen::Index>(d) * dE, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int wcol = 0; wcol < d; ++wcol)
          v((static_cast<Eigen::Index>(x) * d + y) * d + z, wcol) =
              s(y * d + z, x * d + wcol);
  tr.V = v;

  // Average away the A action; the remainder V_sc generates a semicausal
  // CP map with vanishing local part.
  tr.B = ptrace_first(v, dA) / static_cast<double>(dA);
  tr.V_sc = v - kron(CMat::Identity(dA, dA), tr.B);

  // Choi matrix of the semicausal CP part, tau_sc = Y†Y with
  // Y(e, (i,k)) = V_sc((i,e), k).
  CMat y(dE, static_cast<Eigen::Index>(d) * d);
  for (int e = 0; e < dE; ++e)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        y(e, static_cast<Eigen::Index>(i) * d + k) =
            tr.V_sc(static_cast<Eigen::Index>(i) * dE + e, k);
  tr.tau_sc = y.adjoint() * y;

  // Reduced Choi matrix on A ⊗ A: trace the input B leg, pin the output B
  // leg to a fixed basis vector (the result is independent of the choice).
  CVec beta = CVec::Zero(dB);
  beta(tr.beta_index) = 1.0;
  const CMat t1 = ptrace_leg(tr.tau_sc, {dA, dB, dA, dB}, 1);
  tr.tau_sc_A = symmetrize(project_leg(t1, {dA, dA, dB}, 2, beta));

  // Minimal dilation of the reduced part. Directions below the relative
  // rank threshold are discarded; keeping them would break the uniqueness
  // of the U solve below.
  const SpectralDecomp eig = herm_eig(tr.tau_sc_A);
  const double lam_max =
      eig.eigenvalues.size() ? eig.eigenvalues(eig.eigenvalues.size() - 1)
                             : 0.0;
  // Relative rank threshold, with an absolute floor so that an exactly
  // vanishing reduced part does not promote rounding noise to dilation
  // directions.
  const double rank_cut = std::max(1e-10 * std::max(lam_max, 0.0),
                                   1e-13 * (1.0 + tr.tau.norm()));
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > rank_cut) kept.push_back(i);
  const int dF = static_cast<int>(kept.size());
  CMat r(dF, static_cast<Eigen::Index>(dA) * dA);
  for (int f = 0; f < dF; ++f)
    r.row(f) = std::sqrt(eig.eigenvalues(kept[f])) *
               eig.eigenvectors.col(kept[f]).adjoint();
  CMat a_raw(static_cast<Eigen::Index>(dA) * dF, dA);
  for (int a0 = 0; a0 < dA; ++a0)
    for (int f = 0; f < dF; ++f)
      for (int a2 = 0; a2 < dA; ++a2)
        a_raw(static_cast<Eigen::Index>(a0) * dF + f, a2) =
            r(f, a0 * dA + a2);
  tr.A_raw = a_raw;

  // Solve (1_A ⊗ U)(A ⊗ 1_B) = V_sc for U. The system block-decouples: the
  // same d_A^2 x d_F coefficient serves every (b_out, e, b_in) column, and
  // minimality of the dilation makes the solution unique.
  const CMat a_hat = r.transpose();
  CMat rhs(static_cast<Eigen::Index>(dA) * dA,
           static_cast<Eigen::Index>(dB) * dE * dB);
  for (int a = 0; a < dA; ++a)
    for (int ap = 0; ap < dA; ++ap)
      for (int bo = 0; bo < dB; ++bo)
        for (int e = 0; e < dE; ++e)
          for (int bi = 0; bi < dB; ++bi)
            rhs(static_cast<Eigen::Index>(a) * dA + ap,
                (static_cast<Eigen::Index>(bo) * dE + e) * dB + bi) =
                tr.V_sc((static_cast<Eigen::Index>(a) * dB + bo) * dE + e,
                        static_cast<Eigen::Index>(ap) * dB + bi);
  const LstsqResult ls = lstsq_solve(a_hat, rhs);
  const double gate =
      std::max(1e-7 * tr.V_sc.norm(), 1e-10 * (1.0 + lh.norm()));
  if (ls.residual > gate)
    throw LstsqResidualTooLarge(
        "extract_normal_form: dilation solve residual " +
        std::to_string(ls.residual) + " exceeds gate " + std::to_string(gate));
  CMat u_raw(static_cast<Eigen::Index>(dB) * dE,
             static_cast<Eigen::Index>(dF) * dB);
  for (int bo = 0; bo < dB; ++bo)
    for (int e = 0; e < dE; ++e)
      for (int f = 0; f < dF; ++f)
        for (int bi = 0; bi < dB; ++bi)
          u_raw(static_cast<Eigen::Index>(bo) * dE + e,
                static_cast<Eigen::Index>(f) * dB + bi) =
              ls.solution(f, (static_cast<Eigen::Index>(bo) * dE + e) * dB +
                                 bi);
  tr.U_raw = u_raw;

  // Non-CP part from the entangled blocks, then strip the B cross terms;
  // what is left factors as K_A ⊗ 1 + 1 ⊗ iH_B. Averaging the legs fixes
  // the traceless-H_B gauge.
  const CMat g = p * lh * p_perp + 0.5 * (p * lh).trace() * p;
  tr.K = -ptrace_first(g, d);
  tr.K_sc = tr.K - kron(CMat::Identity(dA, dA), tr.B.adjoint()) * tr.V_sc -
            0.5 * kron(CMat::Identity(dA, dA), CMat(tr.B.adjoint() * tr.B));
  const CMat k_a = ptrace_last(tr.K_sc, dB) / static_cast<double>(dB);
  CMat h_b = (-kI / static_cast<double>(dA)) *
             ptrace_first(CMat(tr.K_sc - kron(k_a, CMat::Identity(dB, dB))),
                          dA);
  h_b = symmetrize(h_b);

  // Embed the minimal dilation space into the full environment and complete
  // the isometry to a unitary there.
  CMat emb = CMat::Zero(dE, dF);
  for (int f = 0; f < dF; ++f)
    for (int a1 = 0; a1 < dA; ++a1)
      for (int a2 = 0; a2 < dA; ++a2)
        emb((static_cast<Eigen::Index>(a1) * dB + tr.beta_index) * d +
                a2 * dB + tr.beta_index,
            f) = eig.eigenvectors(a1 * dA + a2, kept[f]);
  CMat a_final = CMat::Zero(static_cast<Eigen::Index>(dA) * dE, dA);
  for (int a0 = 0; a0 < dA; ++a0)
    a_final.block(static_cast<Eigen::Index>(a0) * dE, 0, dE, dA) =
        emb * a_raw.block(static_cast<Eigen::Index>(a0) * dF, 0, dF, dA);
  const CMat u_hat = u_raw * kron(emb.adjoint(), CMat::Identity(dB, dB));
  const CMat u_final = extend_isometry_to_unitary(u_hat, 1e-6);

  SemicausalNormalForm nf;
  nf.d_A = dA;
  nf.d_B = dB;
  nf.d_E = dE;
  nf.U = u_final;
  nf.A = a_final;
  nf.B = tr.B;
  nf.K_A = k_a;
  nf.H_B = h_b;
  return {std::move(nf), std::move(tr)};
}

std::pair<GklsForm, CMat> two_atom_example() {
  CMat le = CMat::Zero(2, 2);
  le(0, 1) = 1.0;  // photon emission |1⟩ -> |0⟩
  const CMat la = le.adjoint();
  CMat p1 = CMat::Zero(2, 2);
  p1(1, 1) = 1.0;
  const CMat id2 = CMat::Identity(2, 2);

  GklsForm gkls;
  gkls.dim = 4;
  gkls.kraus.push_back(kron(le, la) + kron(id2, le));
  gkls.kraus.push_back(kron(le, p1));
  CMat k = CMat::Zero(4, 4);
  for (const CMat& lj : gkls.kraus) k += lj.adjoint() * lj;
  gkls.K = 0.5 * k;

  const CMat id4 = CMat::Identity(4, 4);
  CMat schr = CMat::Zero(16, 16);
  for (const CMat& lj : gkls.kraus) schr += kron(lj, lj.conjugate());
  schr -= kron(gkls.K, id4) + kron(id4, gkls.K.conjugate());
  return {std::move(gkls), std::move(schr)};
}

SemicausalNormalForm random_semicausal_nf(int d_A, int d_B, int d_E,
                                          std::uint64_t seed) {
  Rng rng(seed);
  SemicausalNormalForm nf;
  nf.d_A = d_A;
  nf.d_B = d_B;
  nf.d_E = d_E;
  nf.U = rng.haar_unitary(d_B * d_E);
  nf.A = rng.cgaussian(static_cast<Eigen::Index>(d_A) * d_E, d_A) /
         std::sqrt(static_cast<double>(d_A * d_E));
  nf.B = rng.cgaussian(static_cast<Eigen::Index>(d_B) * d_E, d_B) /
         std::sqrt(static_cast<double>(d_B * d_E));
  nf.K_A = rng.cgaussian(d_A, d_A) / std::sqrt(static_cast<double>(d_A));
  CMat h = rng.hermitian(d_B);
  h -= (h.trace() / static_cast<double>(d_B)) * CMat::Identity(d_B, d_B);
  nf.H_B = h;
  return nf;
}

CMat gkls_schrodinger_matrix(const std::vector<CMat>& jumps, const CMat& h) {
  const Eigen::Index d = h.rows();
  const CMat id = CMat::Identity(d, d);
  CMat k = kI * h;
  for (const CMat& lj : jumps) k += 0.5 * lj.adjoint() * lj;
  CMat m = CMat::Zero(d * d, d * d);
  for (const CMat& lj : jumps) m += kron(lj, lj.conjugate());
  m -= kron(k, id) + kron(id, k.conjugate());
  return m;
}

CMat random_gkls_schrodinger(int d, std::uint64_t seed, int n_jump) {
  Rng rng(seed);
  std::vector<CMat> jumps;
  for (int j = 0; j < n_jump; ++j)
    jumps.push_back(rng.cgaussian(d, d) / std::sqrt(static_cast<double>(d)));
  return gkls_schrodinger_matrix(jumps, rng.hermitian(d));
}

}  // namespace semicausal
