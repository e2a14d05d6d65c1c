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

#include "semicausal/classical.hpp"

#include <cmath>

#include "semicausal/random.hpp"
#include "semicausal/tensor.hpp"

namespace semicausal {

namespace {

double min_entry(const RMat& m) {
  return m.size() ? m.minCoeff() : 0.0;
}

// B generates a stochastic semigroup in the given picture iff the
// off-diagonal entries are nonnegative and the matching marginal vanishes.
void validate_stochastic_generator(const RMat& b, Picture picture, double tol,
                                   const char* what) {
  double min_off = 0.0;
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      if (r != c) min_off = std::min(min_off, b(r, c));
  if (min_off < -tol)
    throw InvariantViolation(std::string(what) +
                             ": negative off-diagonal entry");
  const RVec marginal = (picture == Picture::heisenberg)
                            ? RVec(b.rowwise().sum())
                            : RVec(b.colwise().sum().transpose());
  if (marginal.cwiseAbs().maxCoeff() > tol)
    throw InvariantViolation(std::string(what) +
                             ": stochastic marginal does not vanish");
}

}  // namespace

StochCheck check_stoch(const RMat& m, StochKind kind, double tol) {
  switch (kind) {
    case StochKind::nonneg: {
      const double mn = min_entry(m);
      return StochCheck{mn >= -tol, std::max(0.0, -mn)};
    }
    case StochKind::row_stochastic: {
      const double neg = std::max(0.0, -min_entry(m));
      const double marg = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
      const double res = std::max(neg, marg);
      return StochCheck{res <= tol, res};
    }
    case StochKind::col_stochastic: {
      const double neg = std::max(0.0, -min_entry(m));
      const double marg = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
      const double res = std::max(neg, marg);
      return StochCheck{res <= tol, res};
    }
    case StochKind::row_sub: {
      const double neg = std::max(0.0, -min_entry(m));
      const double marg = (m.rowwise().sum().array() - 1.0).maxCoeff();
      const double res = std::max(neg, std::max(0.0, marg));
      return StochCheck{res <= tol, res};
    }
    case StochKind::col_sub: {
      const double neg = std::max(0.0, -min_entry(m));
      const double marg = (m.colwise().sum().array() - 1.0).maxCoeff();
      const double res = std::max(neg, std::max(0.0, marg));
      return StochCheck{res <= tol, res};
    }
  }
  throw std::logic_error("check_stoch: unreachable");
}

ClassicalSemicausalResult check_classical_semicausal(
    const RMat& m, const BipartiteSystem& sys, Picture picture, double tol) {
  const int dA = sys.d_A, dB = sys.d_B;
  const Eigen::Index n = sys.dim();
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("check_classical_semicausal: non-square input");
  RMat reduced = RMat::Zero(dA, dA);
  double residual = 0.0;
  if (picture == Picture::heisenberg) {
    // W = M (1_A ⊗ 1-vector), then block-average: W must equal reduced ⊗ 1.
    RMat w(n, dA);
    for (int j = 0; j < dA; ++j)
      for (Eigen::Index r = 0; r < n; ++r) {
        double s = 0.0;
        for (int b = 0; b < dB; ++b) s += m(r, j * dB + b);
        w(r, j) = s;
      }
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j) {
        double s = 0.0;
        for (int b = 0; b < dB; ++b) s += w(i * dB + b, j);
        reduced(i, j) = s / dB;
      }
    for (int i = 0; i < dA; ++i)
      for (int b = 0; b < dB; ++b)
        for (int j = 0; j < dA; ++j)
          residual =
              std::max(residual, std::abs(w(i * dB + b, j) - reduced(i, j)));
  } else {
    RMat w(dA, n);
    for (int i = 0; i < dA; ++i)
      for (Eigen::Index c = 0; c < n; ++c) {
        double s = 0.0;
        for (int b = 0; b < dB; ++b) s += m(i * dB + b, c);
        w(i, c) = s;
      }
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j) {
        double s = 0.0;
        for (int b = 0; b < dB; ++b) s += w(i, j * dB + b);
        reduced(i, j) = s / dB;
      }
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int b = 0; b < dB; ++b)
          residual =
              std::max(residual, std::abs(w(i, j * dB + b) - reduced(i, j)));
  }
  return ClassicalSemicausalResult{residual <= slack(tol, m.norm()), reduced,
                                   residual};
}

Semilocalization semilocalize(const RMat& n, const BipartiteSystem& sys,
                              double tol) {
  const int dA = sys.d_A, dB = sys.d_B;
  if (min_entry(n) < -slack(tol, n.norm()))
    throw NotNonnegative("semilocalize: input has negative entries");
  const auto sc = check_classical_semicausal(n, sys, Picture::heisenberg, tol);
  if (!sc.ok)
    throw NotSemicausal("semilocalize: input is not row semicausal, residual " +
                        std::to_string(sc.residual));
  const RMat& na = sc.reduced;
  const int dE = dA * dA;
  const double zero_cut = slack(tol, n.norm());

  // A(j, (k, (m1, m2))) = N^A(j, k) on the copied pair (m1, m2) = (k, j).
  RMat a = RMat::Zero(dA, static_cast<Eigen::Index>(dA) * dE);
  for (int j = 0; j < dA; ++j)
    for (int k = 0; k < dA; ++k)
      a(j, static_cast<Eigen::Index>(k) * dE + k * dA + j) = na(j, k);

  // U(((m,n'),r), s): conditional transition of B given the copied pair,
  // with an identity fallback on pairs where the reduced map vanishes.
  RMat u = RMat::Zero(static_cast<Eigen::Index>(dE) * dB, dB);
  for (int m = 0; m < dA; ++m)
    for (int np = 0; np < dA; ++np) {
      const Eigen::Index base = (static_cast<Eigen::Index>(m) * dA + np) * dB;
      if (std::abs(na(np, m)) > zero_cut) {
        for (int r = 0; r < dB; ++r)
          for (int s = 0; s < dB; ++s)
            u(base + r, s) = n(np * dB + r, m * dB + s) / na(np, m);
      } else {
        for (int r = 0; r < dB; ++r) u(base + r, r) = 1.0;
      }
    }
  return Semilocalization{std::move(a), std::move(u), dE};
}

ClassicalGenReport check_classical_generator(const RMat& q,
                                             const BipartiteSystem& sys,
                                             Picture picture, double tol) {
  const Eigen::Index n = sys.dim();
  if (q.rows() != n || q.cols() != n)
    throw DimensionError("check_classical_generator: non-square input");
  ClassicalGenReport rep;
  double min_off = 0.0;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      if (r != c) min_off = std::min(min_off, q(r, c));
  rep.min_offdiag = min_off;
  rep.nonneg_ok = min_off >= -slack(tol, q.norm());
  const auto sc = check_classical_semicausal(q, sys, picture, tol);
  rep.semicausal_residual = sc.residual;
  rep.semicausal_ok = sc.ok;
  rep.reduced = sc.reduced;
  return rep;
}

void ClassicalGenNF::validate(double tol) const {
  const bool row = picture == Picture::heisenberg;
  if (row) {
    if (U.rows() != static_cast<Eigen::Index>(d_E) * d_B || U.cols() != d_B)
      throw DimensionError("ClassicalGenNF: U shape (row picture)");
    if (A.rows() != d_A || A.cols() != static_cast<Eigen::Index>(d_A) * d_E)
      throw DimensionError("ClassicalGenNF: A shape (row picture)");
  } else {
    if (U.rows() != d_B || U.cols() != static_cast<Eigen::Index>(d_E) * d_B)
      throw DimensionError("ClassicalGenNF: U shape (column picture)");
    if (A.rows() != static_cast<Eigen::Index>(d_A) * d_E || A.cols() != d_A)
      throw DimensionError("ClassicalGenNF: A shape (column picture)");
  }
  if (K_A.size() != d_A) throw DimensionError("ClassicalGenNF: K_A length");
  if (static_cast<int>(B_list.size()) != d_A)
    throw DimensionError("ClassicalGenNF: B_list length");
  const auto ukind =
      row ? StochKind::row_stochastic : StochKind::col_stochastic;
  const auto uc = check_stoch(U, ukind, 1e-9);
  if (!uc.ok)
    throw InvariantViolation("ClassicalGenNF: U is not stochastic, residual " +
                             std::to_string(uc.residual));
  if (min_entry(A) < -tol)
    throw InvariantViolation("ClassicalGenNF: A has negative entries");
  for (const RMat& b : B_list) {
    if (b.rows() != d_B || b.cols() != d_B)
      throw DimensionError("ClassicalGenNF: B block shape");
    validate_stochastic_generator(b, picture, 1e-10, "ClassicalGenNF B block");
  }
}

ClassicalGenNF decompose_classical_generator(const RMat& q,
                                             const BipartiteSystem& sys,
                                             double tol) {
  const int dA = sys.d_A, dB = sys.d_B;
  const auto rep = check_classical_generator(q, sys, Picture::heisenberg, tol);
  if (!rep.pass())
    throw CheckFailed(
        "decompose_classical_generator: input fails the generator check");
  ClassicalGenNF nf;
  nf.d_A = dA;
  nf.d_B = dB;
  nf.picture = Picture::heisenberg;
  nf.K_A = RVec(dA);
  RMat phi_sc = q;
  for (int i = 0; i < dA; ++i) {
    const RMat block = q.block(i * dB, i * dB, dB, dB);
    const double lambda = rep.reduced(i, i);
    nf.B_list.push_back(block - lambda * RMat::Identity(dB, dB));
    nf.K_A(i) = -lambda;
    phi_sc.block(i * dB, i * dB, dB, dB).setZero();
  }
  const auto sl = semilocalize(phi_sc, sys, tol);
  nf.A = sl.A;
  nf.U = sl.U;
  nf.d_E = sl.d_E;
  return nf;
}

RMat synthesize_classical_generator(const ClassicalGenNF& nf,
                                    const BipartiteSystem& sys,
                                    Picture picture) {
  if (nf.picture != picture)
    throw InvariantViolation(
        "synthesize_classical_generator: normal form is in the other picture");
  if (nf.d_A != sys.d_A || nf.d_B != sys.d_B)
    throw DimensionError("synthesize_classical_generator: dims mismatch");
  nf.validate();
  const int dA = sys.d_A, dB = sys.d_B;
  const RMat id_a = RMat::Identity(dA, dA);
  const RMat id_b = RMat::Identity(dB, dB);
  RMat q;
  if (picture == Picture::heisenberg)
    q = kron(nf.A, id_b) * kron(id_a, nf.U);
  else
    q = kron(id_a, nf.U) * kron(nf.A, id_b);
  q -= kron(RMat(nf.K_A.asDiagonal()), id_b);
  for (int i = 0; i < dA; ++i)
    q.block(i * dB, i * dB, dB, dB) += nf.B_list[i];
  return q;
}

double classical_superchannel_trace_gap(const ClassicalGenNF& nf) {
  if (nf.picture != Picture::schrodinger)
    throw InvariantViolation(
        "classical_superchannel_trace_gap: column picture required");
  // Translated A is the partial transpose on the A leg; its i-th column sum
  // must match K_A(i).
  const RMat a_hat = partial_transpose_first(nf.A, nf.d_A);
  double gap = 0.0;
  for (int i = 0; i < nf.d_A; ++i)
    gap = std::max(gap, std::abs(a_hat.col(i).sum() - nf.K_A(i)));
  return gap;
}

ClassicalSupermapGen superchannel_generator_classical(
    const ClassicalGenNF& nf, const BipartiteSystem& sys,
    bool superchannel_flavor) {
  const int dA = sys.d_A, dB = sys.d_B, dE = nf.d_E;
  if (superchannel_flavor) {
    const double gap = classical_superchannel_trace_gap(nf);
    if (gap > slack(1e-9, nf.A.norm()))
      throw InvariantViolation(
          "superchannel_generator_classical: trace condition violated, gap " +
          std::to_string(gap));
  }
  const RMat q = synthesize_classical_generator(nf, sys, Picture::schrodinger);

  // Translated operators: U ← U F_{B;E}, A ← A^{T_A}, K_A and B unchanged.
  const RMat u_hat = nf.U * flip_t<double>(dB, dE);
  const RMat a_hat = partial_transpose_first(nf.A, dA);
  const RMat id_e = RMat::Identity(dE, dE);
  RMat q_hat(static_cast<Eigen::Index>(dA) * dB,
             static_cast<Eigen::Index>(dA) * dB);
  RMat unit = RMat::Zero(dB, dA);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b) {
      unit(b, a) = 1.0;
      RMat out = u_hat * kron(unit, id_e) * a_hat;
      for (int i = 0; i < dA; ++i) out.col(i) -= nf.K_A(i) * unit.col(i);
      out.col(a) += nf.B_list[a] * unit.col(a);
      q_hat.col(static_cast<Eigen::Index>(a) * dB + b) = stoch_choi_vec(out);
      unit(b, a) = 0.0;
    }
  const double residual = (q_hat - q).cwiseAbs().maxCoeff();
  return ClassicalSupermapGen{std::move(q_hat), q, residual};
}

ClassicalGenNF random_classical_nf(const BipartiteSystem& sys, int d_E,
                                   std::uint64_t seed, Picture picture,
                                   bool superchannel_flavor) {
  const int dA = sys.d_A, dB = sys.d_B;
  Rng rng(seed);
  ClassicalGenNF nf;
  nf.d_A = dA;
  nf.d_B = dB;
  nf.d_E = d_E;
  nf.picture = picture;
  if (picture == Picture::heisenberg) {
    RMat u = rng.runiform(static_cast<Eigen::Index>(d_E) * dB, dB);
    for (Eigen::Index r = 0; r < u.rows(); ++r) u.row(r) /= u.row(r).sum();
    nf.U = u;
    nf.A = rng.runiform(dA, static_cast<Eigen::Index>(dA) * d_E);
  } else {
    RMat u = rng.runiform(dB, static_cast<Eigen::Index>(d_E) * dB);
    for (Eigen::Index c = 0; c < u.cols(); ++c) u.col(c) /= u.col(c).sum();
    nf.U = u;
    nf.A = rng.runiform(static_cast<Eigen::Index>(dA) * d_E, dA);
  }
  nf.K_A = RVec(dA);
  for (int i = 0; i < dA; ++i) nf.K_A(i) = rng.uniform() * 2.0 - 0.5;
  for (int i = 0; i < dA; ++i) {
    const RMat phi = rng.runiform(dB, dB);
    if (picture == Picture::heisenberg)
      nf.B_list.push_back(phi - RMat(phi.rowwise().sum().asDiagonal()));
    else
      nf.B_list.push_back(
          phi - RMat(RVec(phi.colwise().sum().transpose()).asDiagonal()));
  }
  if (superchannel_flavor) {
    if (picture != Picture::schrodinger)
      throw InvariantViolation(
          "random_classical_nf: superchannel flavor needs the column picture");
    const RMat a_hat = partial_transpose_first(nf.A, dA);
    for (int i = 0; i < dA; ++i) nf.K_A(i) = a_hat.col(i).sum();
  }
  return nf;
}

RVec stoch_choi_vec(const RMat& m) {
  const int dB = static_cast<int>(m.rows());
  const int dA = static_cast<int>(m.cols());
  RVec x(static_cast<Eigen::Index>(dA) * dB);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b) x(a * dB + b) = m(b, a);
  return x;
}

RMat stoch_choi_unvec(const RVec& x, int d_A, int d_B) {
  if (x.size() != static_cast<Eigen::Index>(d_A) * d_B)
    throw DimensionError("stoch_choi_unvec: size mismatch");
  RMat m(d_B, d_A);
  for (int a = 0; a < d_A; ++a)
    for (int b = 0; b < d_B; ++b) m(b, a) = x(a * d_B + b);
  return m;
}

}  // namespace semicausal
