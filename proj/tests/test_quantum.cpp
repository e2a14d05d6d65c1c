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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semicausal/quantum.hpp"
#include "semicausal/random.hpp"
#include "semicausal/tensor.hpp"

using namespace semicausal;

namespace {

constexpr Complex kI(0.0, 1.0);

// Superoperator matrix of X -> -i[h, X].
CMat commutator_generator(const CMat& h) {
  const Eigen::Index d = h.rows();
  const CMat id = CMat::Identity(d, d);
  return -kI * (kron(h, id) - kron(id, CMat(h.transpose())));
}

CMat swap_matrix(int d) {
  CMat s = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

// Amplitude damping generator on one qubit, Schrodinger picture:
// rho -> L_e rho L_e† - ½ {L_e†L_e, rho}.
CMat amplitude_damping_choi() {
  CMat le = CMat::Zero(2, 2);
  le(0, 1) = 1.0;
  const CMat m = gkls_schrodinger_matrix({le}, CMat::Zero(2, 2));
  return superop_to_choi(m, 2, 2);
}

}  // namespace

TEST_CASE("checker: zero generator and product Hamiltonians pass") {
  const BipartiteSystem sys{2, 2};
  const auto zero = check_semicausal_generator(CMat::Zero(16, 16), sys,
                                               Picture::heisenberg);
  CHECK(zero.generator_ok());
  CHECK(zero.herm_residual == doctest::Approx(0.0));
  CHECK(zero.semicausal_residual == doctest::Approx(0.0));
  CHECK(zero.trace_or_unital_ok);

  Rng rng(51);
  const CMat ha = rng.hermitian(2), hb = rng.hermitian(2);
  const CMat h = kron(ha, CMat::Identity(2, 2)) +
                 kron(CMat::Identity(2, 2), hb);
  const CMat l = commutator_generator(h);
  const auto rep = check_semicausal_generator(l, sys, Picture::heisenberg);
  CHECK(rep.generator_ok());
  // reduced part is the Choi matrix of the commutator with h_a alone
  const CMat la_expected =
      superop_to_choi(commutator_generator(ha), 2, 2);
  CHECK((*rep.reduced_choi - la_expected).norm() <= 1e-10);
  CHECK(rep.trace_or_unital_ok);  // Hamiltonian flows are unital
}

TEST_CASE("checker: the swap Hamiltonian signals from B to A") {
  const BipartiteSystem sys{2, 2};
  const CMat l = commutator_generator(swap_matrix(2));
  const auto rep = check_semicausal_generator(l, sys, Picture::heisenberg);
  CHECK(rep.hermitian_ok);
  CHECK(rep.cond_cp_ok);
  CHECK_FALSE(rep.semicausal_ok);
  CHECK(rep.semicausal_residual > 0.5);
}

TEST_CASE("synthesize: trivial forms") {
  SemicausalNormalForm nf;
  nf.d_A = 2;
  nf.d_B = 2;
  nf.d_E = 1;
  nf.U = CMat::Identity(2, 2);
  nf.A = CMat::Zero(2, 2);
  nf.B = CMat::Zero(2, 2);
  nf.K_A = CMat::Zero(2, 2);
  nf.H_B = CMat::Zero(2, 2);
  const auto gen = synthesize_semicausal(nf);
  CHECK(gen.heisenberg.norm() <= 1e-14);
  CHECK(gen.schrodinger.norm() <= 1e-14);
}

TEST_CASE("synthesize: B-only generators leave the A factor untouched") {
  Rng rng(52);
  for (int rep = 0; rep < 3; ++rep) {
    SemicausalNormalForm nf = random_semicausal_nf(2, 2, 2, 300 + rep);
    nf.A.setZero();
    nf.K_A.setZero();
    const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
    const CMat tt = expm(l, 1.0);
    for (int k = 0; k < 10; ++k) {
      const CMat xa = rng.cgaussian(2, 2);
      const CMat lifted = kron(xa, CMat::Identity(2, 2));
      const CMat out = unvec<Complex>(CVec(tt * vec<Complex>(lifted)), 4, 4);
      CHECK((out - lifted).norm() <= 1e-8);
    }
  }
}

TEST_CASE("synthesize: random forms pass the checker, pictures are adjoint") {
  for (int d_E : {1, 2, 4}) {
    for (int rep = 0; rep < 7; ++rep) {
      const auto nf = random_semicausal_nf(2, 2, d_E, 400 + 10 * d_E + rep);
      const auto gen = synthesize_semicausal(nf);
      CHECK((gen.schrodinger - gen.heisenberg.adjoint()).norm() <= 1e-12);
      const BipartiteSystem sys{2, 2};
      CHECK(check_semicausal_generator(gen.heisenberg, sys,
                                       Picture::heisenberg)
                .generator_ok());
      CHECK(check_semicausal_generator(gen.schrodinger, sys,
                                       Picture::schrodinger)
                .generator_ok());
      // the generated maps are CP and semicausal
      for (double t : {0.1, 1.0}) {
        const CMat tt = expm(gen.heisenberg, t);
        const auto cp = is_cp(choi_of_map(tt, 4, 4), 1e-8);
        CHECK(cp.ok);
        // finite-time semicausality: T_t(X_A ⊗ 1) factorizes
        Rng rng(900 + rep);
        const CMat xa = rng.cgaussian(2, 2);
        const CMat out = unvec<Complex>(
            CVec(tt * vec<Complex>(kron(xa, CMat::Identity(2, 2)))), 4, 4);
        const CMat red = ptrace_last(out, 2) / 2.0;
        CHECK((out - kron(red, CMat::Identity(2, 2))).norm() <=
              1e-8 * (1.0 + out.norm()));
      }
    }
  }
}

TEST_CASE("Kraus expansion equals the Stinespring-built generator") {
  const auto nf = random_semicausal_nf(2, 3, 2, 61);
  const auto gen = synthesize_semicausal(nf);
  const int d = 6;
  const CMat id = CMat::Identity(d, d);
  CMat rebuilt = CMat::Zero(d * d, d * d);
  for (const CMat& lj : gen.gkls.kraus)
    rebuilt += kron(lj.adjoint(), lj.transpose());
  rebuilt -= kron(gen.gkls.K.adjoint(), id) +
             kron(id, gen.gkls.K.transpose());
  CHECK((rebuilt - gen.heisenberg).norm() <= 1e-10);
  // Stinespring route: V from the Kraus stack must satisfy
  // Phi(X) = V†(X ⊗ 1)V with the same V used for K's cross terms.
  const int dE = nf.d_E;
  const CMat v = kron(CMat::Identity(2, 2), nf.U) *
                     kron(nf.A, CMat::Identity(3, 3)) +
                 kron(CMat::Identity(2, 2), nf.B);
  for (int j = 0; j < dE; ++j) {
    CMat lj(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) lj(r, c) = v(r * dE + j, c);
    CHECK((lj - gen.gkls.kraus[j]).norm() <= 1e-14);
  }
}

TEST_CASE("semigroup link holds in both directions") {
  const BipartiteSystem sys{2, 2};
  const auto nf = random_semicausal_nf(2, 2, 2, 62);
  const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
  REQUIRE(check_semicausal_generator(l, sys, Picture::heisenberg)
              .generator_ok());
  Rng rng(63);
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const CMat tt = expm(l, t);
    CHECK(is_cp(choi_of_map(tt, 4, 4), 1e-8).ok);
    const CMat xa = rng.cgaussian(2, 2);
    const CMat out = unvec<Complex>(
        CVec(tt * vec<Complex>(kron(xa, CMat::Identity(2, 2)))), 4, 4);
    const CMat red = ptrace_last(out, 2) / 2.0;
    CHECK((out - kron(red, CMat::Identity(2, 2))).norm() <=
          1e-8 * (1.0 + out.norm()));
  }
  // reverse: the finite difference of the flow returns the generator
  const CMat fd = (expm(l, 1e-6) - CMat::Identity(16, 16)) / 1e-6;
  CHECK((fd - l).norm() <= 1e-4 * (1.0 + l.norm()));
}

TEST_CASE("extraction: zero generator") {
  const BipartiteSystem sys{2, 2};
  const auto [nf, trace] = extract_normal_form(CMat::Zero(16, 16), sys);
  CHECK(nf.A.norm() <= 1e-12);
  CHECK(nf.B.norm() <= 1e-12);
  CHECK(nf.K_A.norm() <= 1e-12);
  CHECK(nf.H_B.norm() <= 1e-12);
  CHECK((nf.U.adjoint() * nf.U -
         CMat::Identity(nf.U.rows(), nf.U.cols()))
            .norm() <= 1e-10);
  CHECK(nf.d_E == 16);
}

TEST_CASE("extraction: round trip over random normal forms") {
  for (const auto& [dA, dB] :
       {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const BipartiteSystem sys{dA, dB};
    for (int d_E : {1, 2}) {
      for (int rep = 0; rep < 3; ++rep) {
        const auto nf =
            random_semicausal_nf(dA, dB, d_E, 7000 + 100 * dA + 10 * dB + rep);
        const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
        const auto [nf2, trace] = extract_normal_form(l, sys);
        CHECK(nf2.d_E <= (dA * dB) * (dA * dB));
        const CMat l2 = synthesize_semicausal(nf2, Picture::heisenberg);
        CHECK((l - l2).norm() <= 1e-7 * (1.0 + l.norm()));
      }
    }
  }
}

TEST_CASE("extraction at the largest supported shape") {
  // (3,3) pushes the environment to dimension 81 and the isometry
  // completion to a 729-dimensional space.
  const BipartiteSystem sys{3, 3};
  const auto nf = random_semicausal_nf(3, 3, 2, 68);
  const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
  const auto [nf2, trace] = extract_normal_form(l, sys);
  CHECK(nf2.d_E == 81);
  const CMat l2 = synthesize_semicausal(nf2, Picture::heisenberg);
  CHECK((l - l2).norm() <= 1e-7 * (1.0 + l.norm()));
}

TEST_CASE("extraction trace: intermediate operators are consistent") {
  const BipartiteSystem sys{2, 2};
  const auto nf = random_semicausal_nf(2, 2, 2, 64);
  const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
  const auto [nf2, tr] = extract_normal_form(l, sys);

  // V reproduces tau as a Stinespring operator.
  const int d = 4, dE = 16;
  CMat y(dE, d * d);
  for (int e = 0; e < dE; ++e)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) y(e, i * d + k) = tr.V(i * dE + e, k);
  CHECK(((y.adjoint() * y) - tr.tau).norm() <= 1e-9 * (1.0 + tr.tau.norm()));

  // V_sc = V - 1 ⊗ B and the reduced Choi matrix is independent of the
  // basis vector used to pin the output B leg.
  CHECK((tr.V_sc - (tr.V - kron(CMat::Identity(2, 2), tr.B))).norm() <=
        1e-13);
  const CMat t1 = ptrace_leg(tr.tau_sc, {2, 2, 2, 2}, 1);
  CVec b0 = CVec::Zero(2), b1 = CVec::Zero(2);
  b0(0) = 1.0;
  b1(1) = 1.0;
  CHECK((project_leg(t1, {2, 2, 2}, 2, b0) -
         project_leg(t1, {2, 2, 2}, 2, b1))
            .norm() <= 1e-9 * (1.0 + tr.tau_sc.norm()));

  // the solved isometry reproduces V_sc through the factorized form
  const CMat rebuilt = kron(CMat::Identity(2, 2), tr.U_raw) *
                       kron(tr.A_raw, CMat::Identity(2, 2));
  CHECK((rebuilt - tr.V_sc).norm() <= 1e-7 * (1.0 + tr.V_sc.norm()));
}

TEST_CASE("extraction refuses non-semicausal input") {
  const BipartiteSystem sys{2, 2};
  const CMat l = commutator_generator(swap_matrix(2));
  CHECK_THROWS_AS(extract_normal_form(l, sys), CheckFailed);
}

TEST_CASE("two-atom fixture") {
  const auto [gkls, l_schr] = two_atom_example();
  const BipartiteSystem sys{2, 2};
  const auto rep =
      check_semicausal_generator(l_schr, sys, Picture::schrodinger);
  CHECK(rep.generator_ok());
  CHECK(rep.herm_residual <= 1e-9);
  CHECK(rep.min_cond_cp_eig >= -1e-9);
  CHECK(rep.semicausal_residual <= 1e-9);
  CHECK(rep.trace_or_unital_ok);  // trace preserving

  // generated dynamics is trace preserving
  const CMat tt = expm(l_schr, 1.0);
  CHECK(is_tp(choi_of_map(tt, 4, 4), 1e-9).ok);

  // reduced dynamics on A is the amplitude damping semigroup
  CHECK((*rep.reduced_choi - amplitude_damping_choi()).norm() <= 1e-9);

  // extraction runs on the Heisenberg adjoint and round trips
  const CMat l_heis = l_schr.adjoint();
  const auto [nf, trace] = extract_normal_form(l_heis, sys);
  const CMat l2 = synthesize_semicausal(nf, Picture::heisenberg);
  CHECK((l2 - l_heis).norm() <= 1e-7 * (1.0 + l_heis.norm()));
}

TEST_CASE("duality: Heisenberg and Schrodinger checkers agree") {
  const BipartiteSystem sys{2, 2};
  const auto check_pair = [&](const CMat& schr, bool expect) {
    const auto rs = check_semicausal_generator(schr, sys,
                                               Picture::schrodinger);
    const auto rh = check_semicausal_generator(CMat(schr.adjoint()), sys,
                                               Picture::heisenberg);
    CHECK(rs.generator_ok() == expect);
    CHECK(rh.generator_ok() == expect);
    if (expect) {
      // reduced Choi matrices of dual maps: flip-transpose relation
      const CMat f = flip(2, 2);
      const CMat translated = f * rs.reduced_choi->transpose() * f;
      CHECK((translated - *rh.reduced_choi).norm() <= 1e-9);
    }
  };
  check_pair(two_atom_example().second, true);
  check_pair(synthesize_semicausal(random_semicausal_nf(2, 2, 2, 65),
                                   Picture::schrodinger),
             true);
  check_pair(commutator_generator(swap_matrix(2)), false);
}

TEST_CASE("random normal forms are reproducible") {
  const auto a = random_semicausal_nf(2, 3, 4, 123);
  const auto b = random_semicausal_nf(2, 3, 4, 123);
  CHECK(a.U == b.U);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
  CHECK(a.K_A == b.K_A);
  CHECK(a.H_B == b.H_B);
  const auto c = random_semicausal_nf(2, 3, 4, 124);
  CHECK(a.U != c.U);
}

TEST_CASE("normal form invariants are enforced") {
  auto nf = random_semicausal_nf(2, 2, 2, 66);
  nf.U(0, 0) += 0.1;
  CHECK_THROWS_AS(synthesize_semicausal(nf), InvariantViolation);
  auto nf2 = random_semicausal_nf(2, 2, 2, 67);
  nf2.H_B(0, 1) += Complex(0.0, 0.3);
  CHECK_THROWS_AS(synthesize_semicausal(nf2), InvariantViolation);
}
