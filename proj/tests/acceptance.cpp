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

// Acceptance suite: one criterion per function, each printing a single
// PASS/FAIL line with its headline numbers and runtime.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "semicausal/classical.hpp"
#include "semicausal/quantum.hpp"
#include "semicausal/random.hpp"
#include "semicausal/superchannel.hpp"
#include "semicausal/tensor.hpp"

using namespace semicausal;

namespace {

constexpr Complex kI(0.0, 1.0);

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

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

// Finite-time Heisenberg semicausality defect of a flow matrix.
double finite_time_semicausal_defect(const CMat& flow,
                                     const BipartiteSystem& sys, Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    const CMat xa = rng.cgaussian(sys.d_A, sys.d_A);
    const CMat lifted = kron(xa, CMat::Identity(sys.d_B, sys.d_B));
    const CMat out = unvec<Complex>(CVec(flow * vec<Complex>(lifted)),
                                    sys.dim(), sys.dim());
    const CMat red = ptrace_last(out, sys.d_B) / sys.d_B;
    worst = std::max(worst,
                     (out - kron(red, CMat::Identity(sys.d_B, sys.d_B)))
                             .norm() /
                         (1.0 + out.norm()));
  }
  return worst;
}

bool criterion_two_atom(std::string& detail) {
  const auto [gkls, l_schr] = two_atom_example();
  const BipartiteSystem sys{2, 2};
  const auto rep =
      check_semicausal_generator(l_schr, sys, Picture::schrodinger);
  bool ok = rep.generator_ok() && rep.herm_residual <= 1e-9 &&
            rep.min_cond_cp_eig >= -1e-9 && rep.semicausal_residual <= 1e-9;

  // reduced dynamics must equal the photon-emission generator on A
  CMat le = CMat::Zero(2, 2);
  le(0, 1) = 1.0;
  const CMat expected =
      superop_to_choi(gkls_schrodinger_matrix({le}, CMat::Zero(2, 2)), 2, 2);
  const double reduced_gap = (*rep.reduced_choi - expected).cwiseAbs().maxCoeff();
  ok = ok && reduced_gap <= 1e-9;

  // e^{tL} is CP, TP and Schrodinger semicausal at t in {0.1, 1, 5}
  double worst_cp = 0.0, worst_tp = 0.0, worst_sc = 0.0;
  Rng rng(1);
  for (double t : {0.1, 1.0, 5.0}) {
    const CMat tt = expm(l_schr, t);
    const auto cc = check_channel_choi(superop_to_choi(tt, 4, 4), 4, 4, 1e-8);
    worst_cp = std::min(worst_cp, cc.min_eig);
    worst_tp = std::max(worst_tp, cc.tp_residual);
    // Schrodinger semicausality of the finite-time map via its adjoint
    worst_sc = std::max(
        worst_sc, finite_time_semicausal_defect(CMat(tt.adjoint()), sys, rng));
  }
  ok = ok && worst_cp >= -1e-8 && worst_tp <= 1e-8 && worst_sc <= 1e-8;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "residuals: check %.2e, reduced %.2e, cp %.2e, tp %.2e, "
                "semicausal %.2e",
                rep.semicausal_residual, reduced_gap, -worst_cp, worst_tp,
                worst_sc);
  detail = buf;
  return ok;
}

bool criterion_quantum_roundtrip(std::string& detail) {
  double worst_rt = 0.0;
  int count = 0;
  bool ok = true;
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 2}};
  const std::vector<int> envs{1, 2, 4};
  std::uint64_t seed = 42;
  while (count < 100) {
    const auto [dA, dB] = shapes[count % shapes.size()];
    const int dE = envs[(count / shapes.size()) % envs.size()];
    const BipartiteSystem sys{dA, dB};
    const auto nf = random_semicausal_nf(dA, dB, dE, seed++);
    const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
    ok = ok &&
         check_semicausal_generator(l, sys, Picture::heisenberg).generator_ok();
    const auto [nf2, trace] = extract_normal_form(l, sys);
    ok = ok && nf2.d_E <= (dA * dB) * (dA * dB);
    const CMat l2 = synthesize_semicausal(nf2, Picture::heisenberg);
    const double rt = (l - l2).norm() / (1.0 + l.norm());
    worst_rt = std::max(worst_rt, rt);
    ok = ok && rt <= 1e-7;
    ++count;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "100 forms, worst round trip %.2e", worst_rt);
  detail = buf;
  return ok;
}

bool criterion_negative_controls(std::string& detail) {
  const BipartiteSystem sys{2, 2};
  // swap Hamiltonian: semicausality residual at least 0.5
  const auto swap_rep = check_semicausal_generator(
      commutator_generator(swap_matrix(2)), sys, Picture::heisenberg);
  bool ok = !swap_rep.semicausal_ok && swap_rep.semicausal_residual >= 0.5;

  // transpose-based CP part: conditional CP fails with eigenvalue <= -0.9
  const auto transpose_super = superop_matrix(
      [](const CMat& rho) { return CMat(rho.transpose()); }, 2, 2);
  const SupermapGen bad =
      intro_model(2, 2, transpose_super, CMat::Zero(4, 4), 1.0, 0.0);
  const auto bad_rep = check_superchannel_generator(bad);
  ok = ok && !bad_rep.cond_cp_ok && bad_rep.min_cond_cp_eig <= -0.9;

  // breaking only the trace condition breaks only the superchannel flavor
  auto nf = random_superchannel_nf(2, 2, 2, 5, Flavor::superchannel);
  nf.K_A(0, 0) += 0.4;
  const auto pre = check_superchannel_generator(
      synthesize_superchannel_generator(nf, Flavor::preselecting));
  ok = ok && pre.generator_ok() && !pre.trace_or_unital_ok;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "swap residual %.3f, transpose min eig %.3f, "
                "preselecting-only gap %.3f",
                swap_rep.semicausal_residual, bad_rep.min_cond_cp_eig,
                pre.trace_or_unital_residual);
  detail = buf;
  return ok;
}

bool criterion_superchannel_semigroup(std::string& detail) {
  bool ok = true;
  double worst_eig = 0.0, worst_tp = 0.0, worst_comp = 0.0;
  for (int rep = 0; rep < 30; ++rep) {
    const auto nf =
        random_superchannel_nf(2, 2, 2, 600 + rep, Flavor::superchannel);
    const auto g = synthesize_superchannel_generator(nf, Flavor::superchannel);
    Rng rng(700 + rep);
    for (int c = 0; c < 10; ++c) {
      const CMat t0 = random_channel_choi(2, 2, rng);
      for (double t : {0.3, 1.0, 2.0}) {
        const auto cc =
            check_channel_choi(evolve_channel(g, t0, {t})[0], 2, 2, 1e-8);
        worst_eig = std::min(worst_eig, cc.min_eig);
        worst_tp = std::max(worst_tp, cc.tp_residual);
        ok = ok && cc.ok;
      }
    }
    // semigroup law at (s, t) = (0.4, 0.6)
    const CMat lhs = expm(g.l_hat, 1.0);
    const CMat rhs = expm(g.l_hat, 0.4) * expm(g.l_hat, 0.6);
    const double comp = (lhs - rhs).norm();
    worst_comp = std::max(worst_comp, comp);
    ok = ok && comp <= 1e-8;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "30 generators x 10 channels: min eig %.2e, tp %.2e, "
                "semigroup gap %.2e",
                worst_eig, worst_tp, worst_comp);
  detail = buf;
  return ok;
}

bool criterion_intro_model(std::string& detail) {
  const CMat la = random_gkls_schrodinger(2, 21);
  const CMat lb = random_gkls_schrodinger(2, 22);
  const SupermapGen g = intro_model(2, 2, la, lb, 1.0, 1.0);
  Rng rng(23);
  const CMat t0 = random_channel_choi(2, 2, rng);
  double worst = 0.0;
  for (double t : {0.5, 1.0}) {
    const CMat via_gen = evolve_channel(g, t0, {t})[0];
    const CMat via_comp = superop_to_choi(
        CMat(expm(lb, t) * choi_to_superop(t0, 2, 2) * expm(la, t)), 2, 2);
    worst = std::max(worst, (via_gen - via_comp).norm());
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "closed-form composition gap %.2e", worst);
  detail = buf;
  return worst <= 1e-8;
}

bool criterion_classical(std::string& detail) {
  bool ok = true;
  double worst_reassembly = 0.0, worst_reconstruction = 0.0,
         worst_stoch = 0.0;
  std::uint64_t seed = 51;
  int count = 0;
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  // 100 random normal forms: synthesize -> check -> decompose -> reassemble
  while (count < 100) {
    const auto [dA, dB] = shapes[count % shapes.size()];
    const BipartiteSystem sys{dA, dB};
    const auto nf =
        random_classical_nf(sys, 2, seed++, Picture::heisenberg);
    const RMat q = synthesize_classical_generator(nf, sys, Picture::heisenberg);
    ok = ok && check_classical_generator(q, sys, Picture::heisenberg).pass();
    const auto parts = decompose_classical_generator(q, sys);
    const double res =
        (synthesize_classical_generator(parts, sys, Picture::heisenberg) - q)
            .cwiseAbs()
            .maxCoeff();
    worst_reassembly = std::max(worst_reassembly, res);
    ok = ok && res <= 1e-10;
    ++count;
  }
  // 100 random semicausal nonnegative maps reconstruct through the copied
  // register, including crafted instances with vanishing reduced entries
  Rng rng(seed);
  for (int rep = 0; rep < 100; ++rep) {
    const auto [dA, dB] = shapes[rep % shapes.size()];
    const BipartiteSystem sys{dA, dB};
    RMat u = rng.runiform(2 * dB, dB);
    for (Eigen::Index r = 0; r < u.rows(); ++r) u.row(r) /= u.row(r).sum();
    const RMat a = rng.runiform(dA, dA * 2);
    RMat n = kron(a, RMat::Identity(dB, dB)) *
             kron(RMat::Identity(dA, dA), u);
    if (rep % 5 == 0) {
      // zero out one whole A-block row: exercises the fallback branch
      n.block(0, 0, dB, n.cols()).setZero();
    }
    const auto sl = semilocalize(n, sys);
    const double res = (kron(sl.A, RMat::Identity(dB, dB)) *
                            kron(RMat::Identity(dA, dA), sl.U) -
                        n)
                           .cwiseAbs()
                           .maxCoeff();
    worst_reconstruction = std::max(worst_reconstruction, res);
    ok = ok && res <= 1e-9;
  }
  // supermap generators preserve column stochasticity under the flow
  for (int rep = 0; rep < 10; ++rep) {
    const BipartiteSystem sys{2, 3};
    const auto nf =
        random_classical_nf(sys, 2, 900 + rep, Picture::schrodinger, true);
    const auto g = superchannel_generator_classical(nf, sys, true);
    for (int c = 0; c < 10; ++c) {
      RMat m = rng.runiform(3, 2);
      for (int col = 0; col < 2; ++col) m.col(col) /= m.col(col).sum();
      for (double t : {0.5, 2.0}) {
        const RMat mt = stoch_choi_unvec(
            RVec(expm(g.q_hat, t) * stoch_choi_vec(m)), 2, 3);
        const auto sc = check_stoch(mt, StochKind::col_stochastic, 1e-8);
        worst_stoch = std::max(worst_stoch, sc.residual);
        ok = ok && sc.ok;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "reassembly %.2e, reconstruction %.2e, stochasticity %.2e",
                worst_reassembly, worst_reconstruction, worst_stoch);
  detail = buf;
  return ok;
}

bool criterion_duality(std::string& detail) {
  const BipartiteSystem sys{2, 2};
  double worst = 0.0;
  bool ok = true;
  std::vector<CMat> fixtures;
  fixtures.push_back(two_atom_example().second);
  for (int rep = 0; rep < 10; ++rep)
    fixtures.push_back(synthesize_semicausal(
        random_semicausal_nf(2, 2, 2, 1200 + rep), Picture::schrodinger));
  for (const CMat& schr : fixtures) {
    const auto rs =
        check_semicausal_generator(schr, sys, Picture::schrodinger);
    const auto rh = check_semicausal_generator(CMat(schr.adjoint()), sys,
                                               Picture::heisenberg);
    ok = ok && rs.generator_ok() && rh.generator_ok();
    const CMat f = flip(2, 2);
    const double gap =
        (f * rs.reduced_choi->transpose() * f - *rh.reduced_choi).norm();
    worst = std::max(worst, gap);
    ok = ok && gap <= 1e-9;
  }
  // a failing fixture must fail in both pictures
  const CMat swap_gen = commutator_generator(swap_matrix(2));
  ok = ok &&
       !check_semicausal_generator(swap_gen, sys, Picture::schrodinger)
            .generator_ok() &&
       !check_semicausal_generator(swap_gen, sys, Picture::heisenberg)
            .generator_ok();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst reduced-map translation gap %.2e",
                worst);
  detail = buf;
  return ok;
}

bool criterion_local_b_dynamics(std::string& detail) {
  // With no action on A, the flow fixes every X_A ⊗ 1.
  Rng rng(1300);
  double worst = 0.0;
  bool ok = true;
  for (int rep = 0; rep < 5; ++rep) {
    auto nf = random_semicausal_nf(2, 2, 2, 1400 + rep);
    nf.A.setZero();
    nf.K_A.setZero();
    const CMat l = synthesize_semicausal(nf, Picture::heisenberg);
    const CMat tt = expm(l, 1.0);
    for (int k = 0; k < 10; ++k) {
      const CMat xa = rng.cgaussian(2, 2);
      const CMat lifted = kron(xa, CMat::Identity(2, 2));
      const CMat out =
          unvec<Complex>(CVec(tt * vec<Complex>(lifted)), 4, 4);
      const double gap = (out - lifted).norm();
      worst = std::max(worst, gap);
      ok = ok && gap <= 1e-8;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst invariance gap %.2e", worst);
  detail = buf;
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 two-atom fixture", criterion_two_atom},
      {"2 quantum round trip (100 forms)", criterion_quantum_roundtrip},
      {"3 negative controls", criterion_negative_controls},
      {"4 superchannel semigroup (30 generators)",
       criterion_superchannel_semigroup},
      {"5 intro-model closed form", criterion_intro_model},
      {"6 classical suite", criterion_classical},
      {"7 picture duality", criterion_duality},
      {"8 local-B dynamics fix A", criterion_local_b_dynamics},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %s (%.2fs) %s\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), secs, detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
