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

#include "semicausal/types.hpp"

// Classical semicausality over finite alphabets. Alphabets are index sets
// 0..n-1; maps are real matrices on R^A ⊗ R^B with A-major product ordering.
// Picture::heisenberg is the row picture (N(1_A ⊗ 1_B-vector) factorizes),
// Picture::schrodinger the column picture.

namespace semicausal {

enum class StochKind {
  nonneg,
  row_stochastic,
  col_stochastic,
  row_sub,
  col_sub
};

/// Entrywise / marginal residual of a stochasticity property; ok compares the
/// residual against tol.
struct StochCheck {
  bool ok;
  double residual;
};
StochCheck check_stoch(const RMat& m, StochKind kind, double tol = 1e-10);

struct ClassicalSemicausalResult {
  bool ok;
  RMat reduced;     // candidate reduced map on R^A (block average)
  double residual;  // entrywise max deviation from the factorized form
};
ClassicalSemicausalResult check_classical_semicausal(
    const RMat& m, const BipartiteSystem& sys, Picture picture,
    double tol = kDefaultTol);

/// Semilocalization of a nonnegative row-semicausal map: N factors as
/// (A ⊗ 1_B)(1_A ⊗ U) with U row-stochastic, A nonnegative and |E| = |A|^2.
struct Semilocalization {
  RMat A;  // d_A x (d_A * d_E)
  RMat U;  // (d_E * d_B) x d_B, row-stochastic
  int d_E;
};
Semilocalization semilocalize(const RMat& n, const BipartiteSystem& sys,
                              double tol = kDefaultTol);

struct ClassicalGenReport {
  double min_offdiag = 0.0;  // most negative off-diagonal entry (0 if none)
  double semicausal_residual = 0.0;
  RMat reduced;
  bool nonneg_ok = false;
  bool semicausal_ok = false;
  bool pass() const { return nonneg_ok && semicausal_ok; }
};

/// A generator of a semigroup of semicausal nonnegative maps must have
/// nonnegative off-diagonal entries and be semicausal itself.
ClassicalGenReport check_classical_generator(const RMat& q,
                                             const BipartiteSystem& sys,
                                             Picture picture,
                                             double tol = kDefaultTol);

/// Normal form of a classical semicausal generator:
///   Q = (A ⊗ 1_B)(1_A ⊗ U) - K_A ⊗ 1_B + Σ_i |a_i⟩⟨a_i| ⊗ B^(i)   (row)
///   Q = (1_A ⊗ U)(A ⊗ 1_B) - K_A ⊗ 1_B + Σ_i |a_i⟩⟨a_i| ⊗ B^(i)   (col)
/// with U row-/column-stochastic, A nonnegative, K_A diagonal and each B^(i)
/// a generator of a stochastic semigroup in the matching picture.
struct ClassicalGenNF {
  int d_A = 1;
  int d_B = 1;
  int d_E = 1;
  Picture picture = Picture::heisenberg;
  RMat U;
  RMat A;
  RVec K_A;                  // diagonal entries
  std::vector<RMat> B_list;  // one d_B x d_B generator per A letter

  void validate(double tol = 1e-9) const;
};

/// Split a row-picture generator into the normal form gauge with
/// block-off-diagonal nonnegative part: B^(i) = Q^(ii) - λ^(ii) 1,
/// K_A = -diag(λ^(ii)), and (A, U) from semilocalizing the off-diagonal
/// blocks. Throws CheckFailed if q is not a valid generator.
ClassicalGenNF decompose_classical_generator(const RMat& q,
                                             const BipartiteSystem& sys,
                                             double tol = kDefaultTol);

RMat synthesize_classical_generator(const ClassicalGenNF& nf,
                                    const BipartiteSystem& sys,
                                    Picture picture);

/// Gap of the stochastic-preservation condition ⟨a_i|K_A a_i⟩ = ⟨1_AE|A a_i⟩
/// in the translated (supermap-side) variables; zero gap means the generated
/// supermaps send stochastic matrices to stochastic matrices.
double classical_superchannel_trace_gap(const ClassicalGenNF& nf);

/// Generator of a semigroup of classical supermaps, acting on maps
/// M : R^A -> R^B carried as classical Choi vectors (component (a,b) of the
/// vector is M(b,a)).
struct ClassicalSupermapGen {
  RMat q_hat;                  // built from the translated normal form
  RMat q_semicausal;           // conjugated semicausal generator (same matrix)
  double translation_residual; // agreement between the two constructions
};
ClassicalSupermapGen superchannel_generator_classical(
    const ClassicalGenNF& nf, const BipartiteSystem& sys,
    bool superchannel_flavor);

/// Seeded random normal form; superchannel_flavor pins K_A to the
/// stochastic-preservation condition (column picture only).
ClassicalGenNF random_classical_nf(const BipartiteSystem& sys, int d_E,
                                   std::uint64_t seed, Picture picture,
                                   bool superchannel_flavor = false);

/// Classical Choi vector (1 ⊗ M)|Ω⟩ of a real map M : R^A -> R^B and back.
RVec stoch_choi_vec(const RMat& m);
RMat stoch_choi_unvec(const RVec& x, int d_A, int d_B);

}  // namespace semicausal
