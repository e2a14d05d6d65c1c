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
#include <vector>

#include "semicausal/choi.hpp"
#include "semicausal/quantum.hpp"
#include "semicausal/random.hpp"
#include "semicausal/types.hpp"

// Generators of semigroups of quantum supermaps. Channels T : B(H_A) ->
// B(H_B) are carried exclusively as their Choi matrices on H_A ⊗ H_B, so a
// supermap generator is a matrix on vectorized Choi matrices and its
// Choi-conjugated semicausal form is the very same matrix.

namespace semicausal {

enum class Flavor { preselecting, superchannel };

struct SupermapGen {
  int d_A = 1;
  int d_B = 1;
  CMat l_hat;  // side (d_A d_B)^2, acts on vec(choi(T))
};

/// Normal form of a supermap generator: a pure environment state
/// sigma = |ξ⟩⟨ξ|, a unitary U on H_B ⊗ H_E and operators A on H_A ⊗ H_E,
/// B on H_B ⊗ H_E, K_A on H_A, Hermitian H_B. The superchannel flavor
/// additionally requires tr_sigma[A†A] = K_A + K_A†.
struct SuperchannelNormalForm {
  int d_A = 1;
  int d_B = 1;
  int d_E = 1;
  int sigma_index = 0;
  CMat U;
  CMat A;
  CMat B;
  CMat K_A;
  CMat H_B;

  /// Hamiltonian on A, derived from K_A on demand: (K_A - K_A†) / 2i.
  CMat hamiltonian_a() const;
  void validate(double tol = 1e-9) const;
};

/// Sandwich term of a semicausal map and its supermap translation:
/// S(X) = tr_E[(1 ⊗ L_B)(L_A ⊗ 1) X (R_A† ⊗ 1)(1 ⊗ R_B†)] with
/// L_A, R_A : H_A -> H_A ⊗ H_C and L_B, R_B : H_C ⊗ H_B -> H_B ⊗ H_E.
struct TranslationTerm {
  int d_A = 1;
  int d_B = 1;
  int d_C = 1;
  int d_E = 1;
  CMat L_A, R_A, L_B, R_B;
};

/// Decision procedure on the conjugated Choi matrix: conditional complete
/// positivity, the flipped partial-trace factorization, and tracelessness of
/// the reduced part over its input leg. The preselecting verdict ignores the
/// last criterion.
CheckReport check_superchannel_generator(const SupermapGen& g,
                                         double tol = kDefaultTol);

/// Residual of tr_sigma[A†A] = K_A + K_A†.
double superchannel_trace_gap(const SuperchannelNormalForm& nf);

/// Build the generator; for the superchannel flavor the trace condition is
/// enforced and the dissipative/Hamiltonian split is cross-checked against
/// the assembled matrix.
SupermapGen synthesize_superchannel_generator(const SuperchannelNormalForm& nf,
                                              Flavor flavor);

/// Semicausal-side operators of a supermap normal form (the inverse of the
/// Choi-conjugation dictionary).
SemicausalNormalForm to_semicausal_nf(const SuperchannelNormalForm& nf);

/// Recover a normal form from a checker-passing generator; synthesizing it
/// reproduces l_hat up to 1e-6 relative Frobenius error.
SuperchannelNormalForm extract_superchannel_nf(const SupermapGen& g,
                                               double tol = kDefaultTol);

/// Trajectory of Choi matrices t -> choi(e^{t L̂}(T0)).
std::vector<CMat> evolve_channel(const SupermapGen& g, const CMat& t0_choi,
                                 const std::vector<double>& times);

/// Supermap matrix of one translated sandwich term, validated internally
/// against the direct Choi conjugation of S.
CMat translate_semicausal_to_supermap(const TranslationTerm& term,
                                      double tol = 1e-10);

/// Pre/post-processing model L̂(T) = gamma_B L_B ∘ T + gamma_A T ∘ L_A with
/// Schrodinger GKLS generators L_A on B(H_A) and L_B on B(H_B); generates
/// e^{t gamma_B L_B} ∘ T ∘ e^{t gamma_A L_A}.
SupermapGen intro_model(int d_A, int d_B, const CMat& l_a, const CMat& l_b,
                        double gamma_a = 1.0, double gamma_b = 1.0);

/// Matrix of the Hamiltonian part T -> (rho -> -i[H_B, T(rho)] - i T([H_A, rho])).
CMat hamiltonian_part(const CMat& h_a, const CMat& h_b, int d_A, int d_B);

/// Matrix of the dissipative part assembled term by term from the normal
/// form (stochastic application, post-processing, and cross terms).
CMat dissipative_part(const SuperchannelNormalForm& nf);

/// (T ⊗ id_C)(Y) for T given by its Choi matrix tau and Y on H_A ⊗ H_C.
CMat apply_choi_tensor_id(const CMat& tau, const CMat& y, int d_A, int d_B,
                          int d_C);

SuperchannelNormalForm random_superchannel_nf(int d_A, int d_B, int d_E,
                                              std::uint64_t seed,
                                              Flavor flavor);

/// Random channel (CP and trace-preserving) as a Choi matrix, from a
/// normalized Gaussian Kraus set.
CMat random_channel_choi(int d_in, int d_out, Rng& rng, int n_kraus = 3);

/// CP/TP verdict of a Choi matrix, with the raw figures.
struct ChannelCheck {
  bool ok;
  double min_eig;
  double tp_residual;
};
ChannelCheck check_channel_choi(const CMat& choi, int d_in, int d_out,
                                double tol = 1e-8);

}  // namespace semicausal
