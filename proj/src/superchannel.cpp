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

#include "semicausal/superchannel.hpp"

#include <cmath>

#include "semicausal/tensor.hpp"

namespace semicausal {

namespace {

constexpr Complex kI(0.0, 1.0);

// Assemble the matrix of a supermap from its action on Choi-matrix units.
CMat supermap_matrix(const std::function<CMat(const CMat&)>& f, int side) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(side) * side;
  CMat m(n2, n2);
  CMat unit = CMat::Zero(side, side);
  for (int p = 0; p < side; ++p)
    for (int q = 0; q < side; ++q) {
      unit(p, q) = 1.0;
      m.col(p * side + q) = vec<Complex>(f(unit));
      unit(p, q) = 0.0;
    }
  return m;
}

CMat sigma_state(int d_E, int index) {
  CMat s = CMat::Zero(d_E, d_E);
  s(index, index) = 1.0;
  return s;
}

}  // namespace

CMat SuperchannelNormalForm::hamiltonian_a() const {
  return (K_A - K_A.adjoint()) / (2.0 * kI);
}

void SuperchannelNormalForm::validate(double tol) const {
  const Eigen::Index nb = static_cast<Eigen::Index>(d_B) * d_E;
  const Eigen::Index na = static_cast<Eigen::Index>(d_A) * d_E;
  if (U.rows() != nb || U.cols() != nb)
    throw DimensionError("SuperchannelNormalForm: U shape");
  if (A.rows() != na || A.cols() != na)
    throw DimensionError("SuperchannelNormalForm: A shape");
  if (B.rows() != nb || B.cols() != nb)
    throw DimensionError("SuperchannelNormalForm: B shape");
  if (K_A.rows() != d_A || K_A.cols() != d_A)
    throw DimensionError("SuperchannelNormalForm: K_A shape");
  if (H_B.rows() != d_B || H_B.cols() != d_B)
    throw DimensionError("SuperchannelNormalForm: H_B shape");
  if (sigma_index < 0 || sigma_index >= d_E)
    throw DimensionError("SuperchannelNormalForm: sigma index out of range");
  if ((U.adjoint() * U - CMat::Identity(nb, nb)).norm() >
      slack(tol, std::sqrt(static_cast<double>(nb))))
    throw InvariantViolation("SuperchannelNormalForm: U is not unitary");
  if ((H_B - H_B.adjoint()).norm() > slack(tol, H_B.norm()))
    throw InvariantViolation("SuperchannelNormalForm: H_B is not Hermitian");
}

double superchannel_trace_gap(const SuperchannelNormalForm& nf) {
  const CMat sigma = sigma_state(nf.d_E, nf.sigma_index);
  const CMat lhs = weighted_ptrace_last(CMat(nf.A.adjoint() * nf.A), sigma);
  return (lhs - nf.K_A - nf.K_A.adjoint()).norm();
}

SemicausalNormalForm to_semicausal_nf(const SuperchannelNormalForm& nf) {
  const int dA = nf.d_A, dB = nf.d_B, dE = nf.d_E;
  CMat xi_a = CMat::Zero(static_cast<Eigen::Index>(dA) * dE, dA);
  for (int a = 0; a < dA; ++a) xi_a(a * dE + nf.sigma_index, a) = 1.0;
  CMat xi_b = CMat::Zero(static_cast<Eigen::Index>(dE) * dB, dB);
  for (int b = 0; b < dB; ++b) xi_b(nf.sigma_index * dB + b, b) = 1.0;
  const CMat f_eb = flip(dE, dB);  // E ⊗ B -> B ⊗ E

  SemicausalNormalForm t;
  t.d_A = dA;
  t.d_B = dB;
  t.d_E = dE;
  t.A = partial_transpose_first(nf.A, dA) * xi_a;
  t.B = nf.B * f_eb * xi_b;
  t.U = nf.U * f_eb;
  // Move any H_B trace into K_A (a gauge shift that leaves K untouched) so
  // the semicausal side carries a traceless Hamiltonian.
  const double lambda = std::real(nf.H_B.trace()) / static_cast<double>(dB);
  t.K_A = nf.K_A.transpose() + kI * lambda * CMat::Identity(dA, dA);
  t.H_B = nf.H_B - lambda * CMat::Identity(dB, dB);
  return t;
}

CheckReport check_superchannel_generator(const SupermapGen& g, double tol) {
  const BipartiteSystem sys{g.d_A, g.d_B};
  // On Choi-carried channels the conjugated map has the same matrix, so the
  // criteria are those of a Schrodinger semicausal generator, except that
  // the reduced part must be traceless over its input leg (unital reduced
  // semigroup) rather than over its output leg.
  CheckReport rep =
      check_semicausal_generator(g.l_hat, sys, Picture::schrodinger, tol);
  const CMat& la = *rep.reduced_choi;
  rep.trace_or_unital_residual = ptrace_first(la, g.d_A).norm();
  rep.trace_or_unital_ok =
      rep.trace_or_unital_residual <= slack(tol, g.l_hat.norm());
  return rep;
}

SupermapGen synthesize_superchannel_generator(const SuperchannelNormalForm& nf,
                                              Flavor flavor) {
  nf.validate();
  if (flavor == Flavor::superchannel) {
    const double gap = superchannel_trace_gap(nf);
    if (gap > slack(1e-9, nf.A.norm() * nf.A.norm()))
      throw InvariantViolation(
          "synthesize_superchannel_generator: trace condition violated, "
          "gap " +
          std::to_string(gap));
  }
  const SemicausalNormalForm tilde = to_semicausal_nf(nf);
  SupermapGen g{nf.d_A, nf.d_B,
                synthesize_semicausal(tilde, Picture::schrodinger)};
  if (flavor == Flavor::superchannel) {
    // The generator must split into dissipative plus Hamiltonian parts.
    const CMat split = dissipative_part(nf) +
                       hamiltonian_part(nf.hamiltonian_a(), nf.H_B, nf.d_A,
                                        nf.d_B);
    const double mismatch = (g.l_hat - split).norm();
    if (mismatch > slack(1e-10, g.l_hat.norm()))
      throw std::runtime_error(
          "synthesize_superchannel_generator: dissipative/Hamiltonian split "
          "mismatch " +
          std::to_string(mismatch));
  }
  return g;
}

SuperchannelNormalForm extract_superchannel_nf(const SupermapGen& g,
                                               double tol) {
  const auto rep = check_superchannel_generator(g, tol);
  if (!rep.generator_ok())
    throw CheckFailed("extract_superchannel_nf: generator check failed");
  const BipartiteSystem sys{g.d_A, g.d_B};
  // The Heisenberg adjoint satisfies the Heisenberg-side criteria and shares
  // the Stinespring data (V, K) with the Schrodinger form.
  const auto [tilde, trace] =
      extract_normal_form(CMat(g.l_hat.adjoint()), sys, tol);
  const int dA = g.d_A, dB = g.d_B, dE = tilde.d_E;
  const int xi = 0;

  SuperchannelNormalForm nf;
  nf.d_A = dA;
  nf.d_B = dB;
  nf.d_E = dE;
  nf.sigma_index = xi;
  nf.A = CMat::Zero(static_cast<Eigen::Index>(dA) * dE,
                    static_cast<Eigen::Index>(dA) * dE);
  for (int a = 0; a < dA; ++a)
    for (int e = 0; e < dE; ++e)
      for (int ap = 0; ap < dA; ++ap)
        nf.A(static_cast<Eigen::Index>(a) * dE + e,
             static_cast<Eigen::Index>(ap) * dE + xi) =
            tilde.A(static_cast<Eigen::Index>(ap) * dE + e, a);
  nf.B = CMat::Zero(static_cast<Eigen::Index>(dB) * dE,
                    static_cast<Eigen::Index>(dB) * dE);
  for (int b = 0; b < dB; ++b)
    for (int e = 0; e < dE; ++e)
      for (int bp = 0; bp < dB; ++bp)
        nf.B(static_cast<Eigen::Index>(b) * dE + e,
             static_cast<Eigen::Index>(bp) * dE + xi) =
            tilde.B(static_cast<Eigen::Index>(b) * dE + e, bp);
  nf.U = tilde.U * flip(dB, dE);  // B ⊗ E -> E ⊗ B feeds the tilde unitary
  nf.K_A = tilde.K_A.transpose();
  nf.H_B = tilde.H_B;
  return nf;
}

std::vector<CMat> evolve_channel(const SupermapGen& g, const CMat& t0_choi,
                                 const std::vector<double>& times) {
  const int side = g.d_A * g.d_B;
  if (t0_choi.rows() != side || t0_choi.cols() != side)
    throw DimensionError("evolve_channel: Choi matrix does not match dims");
  std::vector<CMat> out;
  out.reserve(times.size());
  for (double t : times) {
    const CMat st = expm(g.l_hat, t);
    out.push_back(unvec<Complex>(CVec(st * vec<Complex>(t0_choi)), side, side));
  }
  return out;
}

CMat apply_choi_tensor_id(const CMat& tau, const CMat& y, int d_A, int d_B,
                          int d_C) {
  if (y.rows() != static_cast<Eigen::Index>(d_A) * d_C || y.cols() != y.rows())
    throw DimensionError("apply_choi_tensor_id: operand shape");
  if (tau.rows() != static_cast<Eigen::Index>(d_A) * d_B ||
      tau.cols() != tau.rows())
    throw DimensionError("apply_choi_tensor_id: Choi shape");
  CMat z = CMat::Zero(static_cast<Eigen::Index>(d_B) * d_C,
                      static_cast<Eigen::Index>(d_B) * d_C);
  for (int b = 0; b < d_B; ++b)
    for (int c = 0; c < d_C; ++c)
      for (int bp = 0; bp < d_B; ++bp)
        for (int cp = 0; cp < d_C; ++cp) {
          Complex s{};
          for (int a = 0; a < d_A; ++a)
            for (int ap = 0; ap < d_A; ++ap)
              s += y(static_cast<Eigen::Index>(a) * d_C + c,
                     static_cast<Eigen::Index>(ap) * d_C + cp) *
                   tau(static_cast<Eigen::Index>(a) * d_B + b,
                       static_cast<Eigen::Index>(ap) * d_B + bp);
          z(static_cast<Eigen::Index>(b) * d_C + c,
            static_cast<Eigen::Index>(bp) * d_C + cp) = s;
        }
  return z;
}

CMat translate_semicausal_to_supermap(const TranslationTerm& term,
                                      double tol) {
  const int dA = term.d_A, dB = term.d_B, dC = term.d_C, dE = term.d_E;
  if (term.L_A.rows() != static_cast<Eigen::Index>(dA) * dC ||
      term.L_A.cols() != dA || term.R_A.rows() != term.L_A.rows() ||
      term.R_A.cols() != dA)
    throw DimensionError("translate_semicausal_to_supermap: A-side shapes");
  if (term.L_B.rows() != static_cast<Eigen::Index>(dB) * dE ||
      term.L_B.cols() != static_cast<Eigen::Index>(dC) * dB ||
      term.R_B.rows() != term.L_B.rows() || term.R_B.cols() != term.L_B.cols())
    throw DimensionError("translate_semicausal_to_supermap: B-side shapes");

  // Supermap side: T acts through its Choi matrix with an id_C bystander,
  // sandwiched between the flipped B-side operators and the partially
  // transposed A-side operators.
  const CMat v_l = term.L_B * flip(dB, dC);
  const CMat v_r = term.R_B * flip(dB, dC);
  const CMat w_l = partial_transpose_first(term.L_A, dA);
  const CMat w_r = partial_transpose_first(term.R_A, dA);
  const int side = dA * dB;
  const auto supermap = [&](const CMat& tau) {
    CMat out = CMat::Zero(side, side);
    CMat unit = CMat::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j) {
        unit(i, j) = 1.0;
        const CMat z = apply_choi_tensor_id(
            tau, CMat(w_l * unit * w_r.adjoint()), dA, dB, dC);
        const CMat o = ptrace_last(CMat(v_l * z * v_r.adjoint()), dE);
        for (int k = 0; k < dB; ++k)
          for (int l = 0; l < dB; ++l)
            out(static_cast<Eigen::Index>(i) * dB + k,
                static_cast<Eigen::Index>(j) * dB + l) = o(k, l);
        unit(i, j) = 0.0;
      }
    return out;
  };
  const CMat m_hat = supermap_matrix(supermap, side);

  // Direct conjugation oracle: the sandwich map on H_A ⊗ H_B has the same
  // matrix on Choi-carried channels.
  const CMat g_l = kron(CMat::Identity(dA, dA), term.L_B) *
                   kron(term.L_A, CMat::Identity(dB, dB));
  const CMat g_r = kron(CMat::Identity(dA, dA), term.R_B) *
                   kron(term.R_A, CMat::Identity(dB, dB));
  CMat m_direct = CMat::Zero(m_hat.rows(), m_hat.cols());
  for (int e = 0; e < dE; ++e) {
    CMat gle(side, side), gre(side, side);
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c) {
        gle(r, c) = g_l(static_cast<Eigen::Index>(r) * dE + e, c);
        gre(r, c) = g_r(static_cast<Eigen::Index>(r) * dE + e, c);
      }
    m_direct += kron(gle, gre.conjugate());
  }
  const double mismatch = (m_hat - m_direct).norm();
  if (mismatch > slack(tol, m_direct.norm()))
    throw std::runtime_error(
        "translate_semicausal_to_supermap: translation mismatch " +
        std::to_string(mismatch));
  return m_hat;
}

SupermapGen intro_model(int d_A, int d_B, const CMat& l_a, const CMat& l_b,
                        double gamma_a, double gamma_b) {
  const Eigen::Index a2 = static_cast<Eigen::Index>(d_A) * d_A;
  const Eigen::Index b2 = static_cast<Eigen::Index>(d_B) * d_B;
  if (l_a.rows() != a2 || l_a.cols() != a2 || l_b.rows() != b2 ||
      l_b.cols() != b2)
    throw DimensionError("intro_model: generator shapes");
  const int side = d_A * d_B;
  const auto f = [&](const CMat& tau) {
    const CMat mat_t = choi_to_superop(tau, d_A, d_B);
    const CMat out = gamma_b * l_b * mat_t + gamma_a * mat_t * l_a;
    return superop_to_choi(out, d_A, d_B);
  };
  return SupermapGen{d_A, d_B, supermap_matrix(f, side)};
}

CMat hamiltonian_part(const CMat& h_a, const CMat& h_b, int d_A, int d_B) {
  // On Choi matrices the Hamiltonian part acts as -i[h_a^T ⊗ 1 + 1 ⊗ h_b, .].
  const CMat h = kron(CMat(h_a.transpose()), CMat::Identity(d_B, d_B)) +
                 kron(CMat::Identity(d_A, d_A), h_b);
  const int side = d_A * d_B;
  const CMat id = CMat::Identity(side, side);
  return -kI * (kron(h, id) - kron(id, CMat(h.transpose())));
}

CMat dissipative_part(const SuperchannelNormalForm& nf) {
  const int dA = nf.d_A, dB = nf.d_B, dE = nf.d_E;
  const int side = dA * dB;
  const CMat sigma = sigma_state(dE, nf.sigma_index);
  const CMat& a = nf.A;
  const CMat& b = nf.B;
  const CMat& u = nf.U;
  const CMat btb = b.adjoint() * b;
  const CMat ata = a.adjoint() * a;
  const auto f = [&](const CMat& tau) {
    CMat out = CMat::Zero(side, side);
    CMat unit = CMat::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j) {
        unit(i, j) = 1.0;
        const CMat rs = kron(unit, sigma);
        const CMat z0 = apply_choi_tensor_id(tau, rs, dA, dB, dE);
        const CMat z1 =
            apply_choi_tensor_id(tau, CMat(a * rs * a.adjoint()), dA, dB, dE);
        const CMat zac =
            apply_choi_tensor_id(tau, CMat(ata * rs + rs * ata), dA, dB, dE);
        const CMat zl = apply_choi_tensor_id(tau, CMat(a * rs), dA, dB, dE);
        const CMat zr =
            apply_choi_tensor_id(tau, CMat(rs * a.adjoint()), dA, dB, dE);
        CMat sum = u * z1 * u.adjoint() - 0.5 * zac;
        sum += b * z0 * b.adjoint() - 0.5 * (btb * z0 + z0 * btb);
        const CMat uzl = u * zl;
        sum += uzl * b.adjoint() - b.adjoint() * uzl;
        const CMat zru = zr * u.adjoint();
        sum += b * zru - zru * b;
        const CMat o = ptrace_last(sum, dE);
        for (int k = 0; k < dB; ++k)
          for (int l = 0; l < dB; ++l)
            out(static_cast<Eigen::Index>(i) * dB + k,
                static_cast<Eigen::Index>(j) * dB + l) = o(k, l);
        unit(i, j) = 0.0;
      }
    return out;
  };
  return supermap_matrix(f, side);
}

SuperchannelNormalForm random_superchannel_nf(int d_A, int d_B, int d_E,
                                              std::uint64_t seed,
                                              Flavor flavor) {
  Rng rng(seed);
  SuperchannelNormalForm nf;
  nf.d_A = d_A;
  nf.d_B = d_B;
  nf.d_E = d_E;
  nf.sigma_index = 0;
  nf.U = rng.haar_unitary(d_B * d_E);
  nf.A = rng.cgaussian(static_cast<Eigen::Index>(d_A) * d_E,
                       static_cast<Eigen::Index>(d_A) * d_E) /
         std::sqrt(static_cast<double>(d_A * d_E));
  nf.B = rng.cgaussian(static_cast<Eigen::Index>(d_B) * d_E,
                       static_cast<Eigen::Index>(d_B) * d_E) /
         std::sqrt(static_cast<double>(d_B * d_E));
  nf.H_B = rng.hermitian(d_B);
  if (flavor == Flavor::superchannel) {
    const CMat sigma = sigma_state(d_E, nf.sigma_index);
    const CMat re =
        0.5 * weighted_ptrace_last(CMat(nf.A.adjoint() * nf.A), sigma);
    nf.K_A = re + kI * rng.hermitian(d_A);
  } else {
    nf.K_A = rng.cgaussian(d_A, d_A);
  }
  return nf;
}

CMat random_channel_choi(int d_in, int d_out, Rng& rng, int n_kraus) {
  std::vector<CMat> g;
  CMat s = CMat::Zero(d_in, d_in);
  for (int i = 0; i < n_kraus; ++i) {
    g.push_back(rng.cgaussian(d_out, d_in));
    s += g.back().adjoint() * g.back();
  }
  const SpectralDecomp eig = herm_eig(s);
  const CMat s_inv_sqrt = eig.eigenvectors *
                          eig.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                          eig.eigenvectors.adjoint();
  CMat m = CMat::Zero(static_cast<Eigen::Index>(d_out) * d_out,
                      static_cast<Eigen::Index>(d_in) * d_in);
  for (const CMat& gi : g) {
    const CMat k = gi * s_inv_sqrt;
    m += kron(k, k.conjugate());
  }
  return superop_to_choi(m, d_in, d_out);
}

ChannelCheck check_channel_choi(const CMat& choi, int d_in, int d_out,
                                double tol) {
  const Superop s{d_in, d_out, choi};
  const auto cp = is_cp(s, 0.0);
  const auto tp = is_tp(s, 0.0);
  return ChannelCheck{cp.min_eig >= -tol && tp.residual <= tol, cp.min_eig,
                      tp.residual};
}

}  // namespace semicausal
