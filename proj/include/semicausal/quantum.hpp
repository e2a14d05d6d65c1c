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

#include <cstdint>
#include <utility>
#include <vector>

#include "semicausal/choi.hpp"
#include "semicausal/types.hpp"

// Generators of semigroups of B-to-A semicausal CP maps on H_A ⊗ H_B:
// decide (Choi-side criteria), synthesize (Stinespring normal form), and
// extract (constructive inversion of the normal form).

namespace semicausal {

/// GKLS presentation L(X) = Σ_j L_j† X L_j - K† X - X K (Heisenberg) with
/// square jump operators on H_A ⊗ H_B.
struct GklsForm {
  int dim = 1;
  std::vector<CMat> kraus;
  CMat K;
};

/// Stinespring data of a semicausal generator:
///   V = (1_A ⊗ U)(A ⊗ 1_B) + 1_A ⊗ B,
///   K = (1_A ⊗ B†U)(A ⊗ 1_B) + ½ 1_A ⊗ B†B + K_A ⊗ 1_B + 1_A ⊗ iH_B,
/// with U unitary from E ⊗ B to B ⊗ E, A : H_A -> H_A ⊗ H_E,
/// B : H_B -> H_B ⊗ H_E, H_B self-adjoint and traceless (gauge).
struct SemicausalNormalForm {
  int d_A = 1;
  int d_B = 1;
  int d_E = 1;
  CMat U;    // (d_B d_E) x (d_E d_B)
  CMat A;    // (d_A d_E) x d_A
  CMat B;    // (d_B d_E) x d_B
  CMat K_A;  // d_A x d_A
  CMat H_B;  // d_B x d_B

  void validate(double tol = 1e-9) const;
};

/// Intermediate operators of the extraction, each reproducible from its
/// predecessor; kept for diagnosis and for the step-level tests.
struct ExtractionTrace {
  CMat tau;       // off-entangled block of the generator's Choi matrix
  CMat V;         // Stinespring operator of the CP part
  CMat B;         // averaged local part of V
  CMat V_sc;      // V - 1_A ⊗ B
  CMat tau_sc;    // Choi matrix of the semicausal CP part
  CMat tau_sc_A;  // reduced Choi matrix on A ⊗ A
  CMat A_raw;     // minimal dilation of the reduced part
  CMat U_raw;     // isometry solving (1 ⊗ U)(A ⊗ 1) = V_sc
  CMat K;         // non-CP part of the GKLS form
  CMat K_sc;      // K with the B-cross terms removed
  int beta_index = 0;
  int xi_index = 0;
};

struct SemicausalGenerator {
  CMat heisenberg;  // superoperator matrix on vectorized observables
  CMat schrodinger; // adjoint superoperator matrix on vectorized states
  GklsForm gkls;
  const CMat& in(Picture p) const {
    return p == Picture::heisenberg ? heisenberg : schrodinger;
  }
};

/// Choi-side decision procedure: conditional complete positivity plus the
/// factorization of the partially traced Choi matrix. The trace/unitality
/// entry reports unitality of the reduced generator (Heisenberg) or trace
/// preservation (Schrodinger).
CheckReport check_semicausal_generator(const CMat& l,
                                       const BipartiteSystem& sys,
                                       Picture picture,
                                       double tol = kDefaultTol);

/// Build the generator from its normal form; the checker accepts the result
/// by construction.
SemicausalGenerator synthesize_semicausal(const SemicausalNormalForm& nf);
CMat synthesize_semicausal(const SemicausalNormalForm& nf, Picture picture);

/// Recover a normal form from a Heisenberg-picture generator matrix. The
/// returned form need not match the one that produced l (gauge freedom), but
/// synthesizing it reproduces l up to 1e-7 relative Frobenius error.
std::pair<SemicausalNormalForm, ExtractionTrace> extract_normal_form(
    const CMat& l, const BipartiteSystem& sys, double tol = kDefaultTol);

/// Two two-level atoms coupled through photon emission, absorption and
/// pass-through: jump operators L1 = L_e ⊗ L_a + 1 ⊗ L_e, L2 = L_e ⊗ |1⟩⟨1|
/// with L_e = |0⟩⟨1|. Returns the trace-preserving Schrodinger generator.
std::pair<GklsForm, CMat> two_atom_example();

/// Seeded random normal form: Haar U, Gaussian A, B, K_A, traceless
/// Hermitian H_B.
SemicausalNormalForm random_semicausal_nf(int d_A, int d_B, int d_E,
                                          std::uint64_t seed);

/// Random GKLS generator on one system (Schrodinger picture superoperator),
/// with n_jump Gaussian jump operators and a Gaussian Hamiltonian.
CMat random_gkls_schrodinger(int d, std::uint64_t seed, int n_jump = 2);

/// Schrodinger superoperator matrix of rho -> Σ_j L_j rho L_j† - ... for
/// explicit jump operators and Hamiltonian.
CMat gkls_schrodinger_matrix(const std::vector<CMat>& jumps, const CMat& h);

}  // namespace semicausal
