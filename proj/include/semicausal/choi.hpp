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

#include <functional>
#include <optional>

#include "semicausal/tensor.hpp"
#include "semicausal/types.hpp"

// Choi-Jamiolkowski machinery. A linear map T : B(C^in) -> B(C^out) is
// carried either as its superoperator matrix acting on row-major vectorized
// operators, or as its Choi matrix
//   choi = Σ_ij |i⟩⟨j| ⊗ T(|i⟩⟨j|)
// on C^in ⊗ C^out (input leg first). |Ω⟩ = Σ_i |i⟩ ⊗ |i⟩ is unnormalized
// throughout, so no 1/sqrt(d) factors appear anywhere.

namespace semicausal {

struct Superop {
  int in_dim = 1;
  int out_dim = 1;
  CMat choi;  // side in_dim * out_dim
};

/// Explicit reshuffle superoperator matrix -> Choi matrix:
/// choi((i,k), (j,l)) = m((k,l), (i,j)).
CMat superop_to_choi(const CMat& m, int in_dim, int out_dim);

/// Inverse reshuffle Choi matrix -> superoperator matrix.
CMat choi_to_superop(const CMat& choi, int in_dim, int out_dim);

/// Wrap a superoperator matrix as a Superop (Choi form).
Superop choi_of_map(const CMat& m, int in_dim, int out_dim);

/// Apply a map given by its Choi matrix: T(rho) = tr_in[(rho^T ⊗ 1) choi].
CMat apply_choi(const Superop& s, const CMat& rho);

/// Assemble the superoperator matrix of a callable by acting on matrix units.
CMat superop_matrix(const std::function<CMat(const CMat&)>& f, int in_dim,
                    int out_dim);

struct CpResult {
  bool ok;
  double min_eig;  // of the symmetrized Choi matrix
};
CpResult is_cp(const Superop& s, double tol = kDefaultTol);

struct TpResult {
  bool ok;
  double residual;  // ||tr_out(choi) - 1||_F
};
TpResult is_tp(const Superop& s, double tol = kDefaultTol);

struct CondCpResult {
  bool ok;  // hermitian_ok && psd_ok
  bool hermitian_ok;
  bool psd_ok;
  double min_eig;        // of P⊥ L P⊥
  double herm_residual;  // ||L - L†||_F
};

/// Conditional complete positivity of a generator's Choi matrix l_choi (side
/// dim^2): L is self-adjoint and P⊥ L P⊥ ≥ 0, where P⊥ projects off the
/// maximally entangled direction.
CondCpResult cond_cp_check(const CMat& l_choi, int dim,
                           double tol = kDefaultTol);

/// Classical Choi vector of a real matrix M : R^A -> R^B, i.e. (1 ⊗ M)|Ω⟩;
/// component (a, b) equals M(b, a). Throws on imaginary parts above 1e-12.
CVec classical_choi_vec(const CMat& m);
CMat classical_choi_unvec(const CVec& x, int d_A, int d_B);

/// Structured verdict shared by the generator checkers. Residuals are always
/// reported; each flag is the residual compared against the tolerance in
/// force, so callers may re-decide with their own policy.
struct CheckReport {
  double herm_residual = 0.0;
  double min_cond_cp_eig = 0.0;
  double semicausal_residual = 0.0;
  double trace_or_unital_residual = 0.0;
  std::optional<CMat> reduced_choi;  // Choi matrix of the reduced generator
  bool hermitian_ok = false;
  bool cond_cp_ok = false;
  bool semicausal_ok = false;
  bool trace_or_unital_ok = false;

  /// Generator of a semigroup of semicausal CP maps (trace / unitality not
  /// included; those qualify the semigroup, not the semicausality).
  bool generator_ok() const {
    return hermitian_ok && cond_cp_ok && semicausal_ok;
  }
};

}  // namespace semicausal
