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

// scgen: check / extract / synthesize / evolve / demo for generators of
// semigroups of semicausal maps and superchannels, classical and quantum.
//
// Exit codes: 0 criteria pass, 1 criteria or verification fail, 2 parse
// error, 3 dimension error, 4 invariant violation.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semicausal/io.hpp"

using namespace semicausal;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCriteria = 1;
constexpr int kExitParse = 2;
constexpr int kExitDims = 3;
constexpr int kExitInvariant = 4;

double base_tolerance(double cli_tol) {
  if (cli_tol > 0) return cli_tol;
  if (const char* env = std::getenv("SEMICAUSAL_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0) return v;
    } catch (...) {
      // fall through to the default
    }
  }
  return kDefaultTol;
}

Picture parse_picture(const std::string& s) {
  if (s == "heisenberg" || s == "row") return Picture::heisenberg;
  if (s == "schrodinger" || s == "col") return Picture::schrodinger;
  throw io::ParseError("--picture: expected heisenberg|schrodinger (row|col)");
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> times;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) times.push_back(std::stod(tok));
  }
  if (times.empty())
    throw io::ParseError("--times: expected a comma-separated list");
  return times;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::save_json(j, out_path);
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int cmd_check(const std::string& input, const std::string& picture_s,
              const std::string& flavor_s, double tol_opt,
              const std::string& out) {
  const double tol = base_tolerance(tol_opt);
  const json file = io::load_matrix_file(input);
  const std::string kind = io::kind_of(file);
  Timer timer;
  if (kind == "superop") {
    BipartiteSystem sys;
    const CMat l = io::load_superop(file, &sys);
    const auto rep =
        check_semicausal_generator(l, sys, parse_picture(picture_s), tol);
    emit(io::report_to_json(rep, false, tol, timer.ms()), out);
    return rep.generator_ok() ? kExitPass : kExitCriteria;
  }
  if (kind == "supermap_gen") {
    const SupermapGen g = io::load_supermap(file);
    const auto rep = check_superchannel_generator(g, tol);
    emit(io::report_to_json(rep, true, tol, timer.ms()), out);
    const bool pass = flavor_s == "preselecting"
                          ? rep.generator_ok()
                          : rep.generator_ok() && rep.trace_or_unital_ok;
    return pass ? kExitPass : kExitCriteria;
  }
  if (kind == "real_matrix") {
    BipartiteSystem sys;
    const RMat q = io::load_real_matrix(file, &sys);
    const auto rep =
        check_classical_generator(q, sys, parse_picture(picture_s), tol);
    emit(io::classical_report_to_json(rep, tol, timer.ms()), out);
    return rep.pass() ? kExitPass : kExitCriteria;
  }
  throw io::ParseError("check: unsupported kind " + kind);
}

int cmd_extract(const std::string& input, const std::string& picture_s,
                double tol_opt, const std::string& out,
                const std::string& report_path) {
  const double tol = base_tolerance(tol_opt);
  const json file = io::load_matrix_file(input);
  const std::string kind = io::kind_of(file);
  const Picture picture = parse_picture(picture_s);
  Timer timer;
  if (kind == "superop") {
    BipartiteSystem sys;
    CMat l = io::load_superop(file, &sys);
    // Extraction operates on the Heisenberg form; a Schrodinger input is its
    // adjoint, and the synthesized matrix is compared in the input picture.
    const CMat l_heis = picture == Picture::heisenberg ? l : CMat(l.adjoint());
    const auto [nf, trace] = extract_normal_form(l_heis, sys, tol);
    const double rt =
        (synthesize_semicausal(nf, picture) - l).norm() / (1.0 + l.norm());
    emit(io::make_semicausal_nf_file(nf), out);
    json rep{{"round_trip_relative_residual", rt},
             {"d_E", nf.d_E},
             {"wall_time_ms", timer.ms()}};
    if (!report_path.empty()) io::save_json(rep, report_path);
    std::cerr << rep.dump() << "\n";
    return kExitPass;
  }
  if (kind == "supermap_gen") {
    const SupermapGen g = io::load_supermap(file);
    const auto nf = extract_superchannel_nf(g, tol);
    const double rt =
        (synthesize_superchannel_generator(nf, Flavor::preselecting).l_hat -
         g.l_hat)
            .norm() /
        (1.0 + g.l_hat.norm());
    emit(io::make_superchannel_nf_file(nf), out);
    json rep{{"round_trip_relative_residual", rt},
             {"d_E", nf.d_E},
             {"wall_time_ms", timer.ms()}};
    if (!report_path.empty()) io::save_json(rep, report_path);
    std::cerr << rep.dump() << "\n";
    return kExitPass;
  }
  if (kind == "real_matrix") {
    if (picture != Picture::heisenberg)
      throw InvariantViolation(
          "extract: classical decomposition expects the row picture");
    BipartiteSystem sys;
    const RMat q = io::load_real_matrix(file, &sys);
    const auto nf = decompose_classical_generator(q, sys, tol);
    const double rt =
        (synthesize_classical_generator(nf, sys, Picture::heisenberg) - q)
            .cwiseAbs()
            .maxCoeff();
    emit(io::make_classical_nf_file(nf), out);
    json rep{{"reassembly_residual", rt}, {"wall_time_ms", timer.ms()}};
    if (!report_path.empty()) io::save_json(rep, report_path);
    std::cerr << rep.dump() << "\n";
    return kExitPass;
  }
  throw io::ParseError("extract: unsupported kind " + kind);
}

int cmd_synthesize(const std::string& kind, const std::string& dims_s,
                   std::uint64_t seed, const std::string& flavor_s,
                   const std::string& picture_s, const std::string& nf_path,
                   const std::string& out, const std::string& nf_out) {
  const Picture picture = parse_picture(picture_s);
  const Flavor flavor =
      flavor_s == "preselecting" ? Flavor::preselecting : Flavor::superchannel;

  if (!nf_path.empty()) {
    const json file = io::load_matrix_file(nf_path);
    const std::string nf_kind = io::kind_of(file);
    if (nf_kind == "normal_form_semicausal") {
      const auto nf = io::load_semicausal_nf(file);
      emit(io::make_superop_file(synthesize_semicausal(nf, picture),
                                 {nf.d_A, nf.d_B}),
           out);
      return kExitPass;
    }
    if (nf_kind == "normal_form_superchannel") {
      const auto nf = io::load_superchannel_nf(file);
      emit(io::make_supermap_file(
               synthesize_superchannel_generator(nf, flavor)),
           out);
      return kExitPass;
    }
    if (nf_kind == "classical_gen_nf") {
      const auto nf = io::load_classical_nf(file);
      const BipartiteSystem sys{nf.d_A, nf.d_B};
      emit(io::make_real_matrix_file(
               synthesize_classical_generator(nf, sys, nf.picture), sys),
           out);
      return kExitPass;
    }
    throw io::ParseError("synthesize: unsupported normal-form kind " +
                         nf_kind);
  }

  std::vector<int> dims;
  std::stringstream ss(dims_s);
  std::string tok;
  while (std::getline(ss, tok, ',')) dims.push_back(std::stoi(tok));
  if (dims.size() < 2) throw io::ParseError("--dims: expected d_A,d_B[,d_E]");
  const int dA = dims[0], dB = dims[1];
  const int dE = dims.size() > 2 ? dims[2] : 2;
  if (dA < 1 || dB < 1 || dE < 1)
    throw DimensionError("--dims: dimensions must be positive");

  if (kind == "quantum") {
    const auto nf = random_semicausal_nf(dA, dB, dE, seed);
    if (!nf_out.empty())
      io::save_json(io::make_semicausal_nf_file(nf), nf_out);
    emit(io::make_superop_file(synthesize_semicausal(nf, picture), {dA, dB}),
         out);
    return kExitPass;
  }
  if (kind == "superchannel") {
    const auto nf = random_superchannel_nf(dA, dB, dE, seed, flavor);
    if (!nf_out.empty())
      io::save_json(io::make_superchannel_nf_file(nf), nf_out);
    emit(io::make_supermap_file(synthesize_superchannel_generator(nf, flavor)),
         out);
    return kExitPass;
  }
  if (kind == "classical") {
    const bool want_superchannel = flavor_s == "superchannel";
    const Picture pic = want_superchannel ? Picture::schrodinger : picture;
    const auto nf =
        random_classical_nf({dA, dB}, dE, seed, pic, want_superchannel);
    if (!nf_out.empty()) io::save_json(io::make_classical_nf_file(nf), nf_out);
    const BipartiteSystem sys{dA, dB};
    emit(io::make_real_matrix_file(
             synthesize_classical_generator(nf, sys, pic), sys),
         out);
    return kExitPass;
  }
  throw io::ParseError("synthesize: unsupported kind " + kind);
}

int cmd_evolve(const std::string& gen_path, const std::string& init_path,
               const std::string& times_s, bool verify,
               const std::string& out) {
  const std::vector<double> times = parse_times(times_s);
  const json gen_file = io::load_matrix_file(gen_path);
  const json init_file = io::load_matrix_file(init_path);
  const std::string kind = io::kind_of(gen_file);

  const auto write_step = [&](const json& j, size_t i) {
    if (out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      io::save_json(j, out + "_" + std::to_string(i) + ".json");
    }
  };

  if (kind == "supermap_gen") {
    const SupermapGen g = io::load_supermap(gen_file);
    const CMat t0 = io::load_complex_matrix(init_file);
    const auto traj = evolve_channel(g, t0, times);
    int bad = -1;
    for (size_t i = 0; i < traj.size(); ++i) {
      write_step(io::make_complex_matrix_file(traj[i]), i);
      if (verify && bad < 0 &&
          !check_channel_choi(traj[i], g.d_A, g.d_B, 1e-8).ok)
        bad = static_cast<int>(i);
    }
    if (bad >= 0) {
      std::cerr << "verification failed at t=" << times[bad] << "\n";
      return kExitCriteria;
    }
    return kExitPass;
  }
  if (kind == "superop") {
    BipartiteSystem sys;
    const CMat l = io::load_superop(gen_file, &sys);
    const CMat rho0 = io::load_complex_matrix(init_file);
    if (rho0.rows() != sys.dim() || rho0.cols() != sys.dim())
      throw DimensionError("evolve: initial state does not match generator");
    int bad = -1;
    for (size_t i = 0; i < times.size(); ++i) {
      const CMat st = expm(l, times[i]);
      const CMat rho =
          unvec<Complex>(CVec(st * vec<Complex>(rho0)), sys.dim(), sys.dim());
      write_step(io::make_complex_matrix_file(rho), i);
      if (verify && bad < 0) {
        const bool trace_ok =
            std::abs(rho.trace() - rho0.trace()) <= 1e-8 * (1.0 + rho0.norm());
        const bool psd_ok =
            herm_eig(rho).eigenvalues(0) >= -1e-8 * (1.0 + rho.norm());
        if (!(trace_ok && psd_ok)) bad = static_cast<int>(i);
      }
    }
    if (bad >= 0) {
      std::cerr << "verification failed at t=" << times[bad] << "\n";
      return kExitCriteria;
    }
    return kExitPass;
  }
  if (kind == "real_matrix") {
    BipartiteSystem sys;
    const RMat q = io::load_real_matrix(gen_file, &sys);
    BipartiteSystem msys;
    const RMat m0 = io::load_real_matrix(init_file, &msys);
    if (m0.rows() != sys.d_B || m0.cols() != sys.d_A)
      throw DimensionError("evolve: initial map must be d_B x d_A");
    int bad = -1;
    for (size_t i = 0; i < times.size(); ++i) {
      const RMat st = expm(q, times[i]);
      const RMat mt =
          stoch_choi_unvec(RVec(st * stoch_choi_vec(m0)), sys.d_A, sys.d_B);
      write_step(io::make_real_matrix_file(mt, sys), i);
      if (verify && bad < 0 &&
          !check_stoch(mt, StochKind::col_stochastic, 1e-8).ok)
        bad = static_cast<int>(i);
    }
    if (bad >= 0) {
      std::cerr << "verification failed at t=" << times[bad] << "\n";
      return kExitCriteria;
    }
    return kExitPass;
  }
  throw io::ParseError("evolve: unsupported generator kind " + kind);
}

void print_line(const std::string& label, double value, double bound) {
  const bool ok = value <= bound;
  std::cout << (ok ? "  [ok]   " : "  [FAIL] ") << label << " = " << value
            << " (<= " << bound << ")\n";
}

int demo_two_atom(const std::string& fixture_out) {
  std::cout << "two-atom cascade: emission, down-conversion, conditional "
               "absorption\n";
  const auto [gkls, l_schr] = two_atom_example();
  const BipartiteSystem sys{2, 2};
  if (!fixture_out.empty())
    io::save_json(io::make_superop_file(l_schr, sys), fixture_out);
  const auto rep =
      check_semicausal_generator(l_schr, sys, Picture::schrodinger);
  print_line("hermiticity residual", rep.herm_residual, 1e-9);
  print_line("conditional-CP defect", std::max(0.0, -rep.min_cond_cp_eig),
             1e-9);
  print_line("semicausality residual", rep.semicausal_residual, 1e-9);
  print_line("trace-preservation residual", rep.trace_or_unital_residual,
             1e-9);

  CMat le = CMat::Zero(2, 2);
  le(0, 1) = 1.0;
  const CMat reduced_expected =
      superop_to_choi(gkls_schrodinger_matrix({le}, CMat::Zero(2, 2)), 2, 2);
  print_line("reduced dynamics vs photon emission",
             (*rep.reduced_choi - reduced_expected).norm(), 1e-9);

  const auto [nf, trace] = extract_normal_form(CMat(l_schr.adjoint()), sys);
  const double rt =
      (synthesize_semicausal(nf, Picture::schrodinger) - l_schr).norm() /
      (1.0 + l_schr.norm());
  print_line("extract/synthesize round trip", rt, 1e-7);

  bool ok = rep.generator_ok() && rep.trace_or_unital_ok && rt <= 1e-7;
  for (double t : {0.1, 1.0, 5.0}) {
    const CMat tt = expm(l_schr, t);
    const auto cc = check_channel_choi(superop_to_choi(tt, 4, 4), 4, 4, 1e-8);
    std::cout << "  t=" << t << ": channel min eig " << cc.min_eig
              << ", TP residual " << cc.tp_residual << "\n";
    ok = ok && cc.ok;
  }
  return ok ? kExitPass : kExitCriteria;
}

int demo_aging_board() {
  std::cout << "aging circuit board: particle influx before and after the "
               "device\n";
  CMat le = CMat::Zero(2, 2);
  le(0, 1) = 1.0;
  const CMat damp = gkls_schrodinger_matrix({le}, CMat::Zero(2, 2));
  const SupermapGen g = intro_model(2, 2, damp, damp);
  const auto rep = check_superchannel_generator(g);
  print_line("semicausality residual", rep.semicausal_residual, 1e-9);
  print_line("unital-reduced residual", rep.trace_or_unital_residual, 1e-9);
  Rng rng(2026);
  const CMat t0 = random_channel_choi(2, 2, rng);
  bool ok = rep.generator_ok() && rep.trace_or_unital_ok;
  for (double t : {0.25, 0.75, 2.0}) {
    const CMat tt = evolve_channel(g, t0, {t})[0];
    const auto cc = check_channel_choi(tt, 2, 2, 1e-8);
    const CMat direct = superop_to_choi(
        CMat(expm(damp, t) * choi_to_superop(t0, 2, 2) * expm(damp, t)), 2, 2);
    std::cout << "  t=" << t << ": channel min eig " << cc.min_eig
              << ", TP residual " << cc.tp_residual << ", closed-form gap "
              << (tt - direct).norm() << "\n";
    ok = ok && cc.ok && (tt - direct).norm() <= 1e-8;
  }
  return ok ? kExitPass : kExitCriteria;
}

int demo_classical_copy() {
  std::cout << "classical copy construction: factorize a semicausal map "
               "through a copied register\n";
  Rng rng(7);
  const BipartiteSystem sys{3, 2};
  RMat u = rng.runiform(2 * 2, 2);
  for (Eigen::Index r = 0; r < u.rows(); ++r) u.row(r) /= u.row(r).sum();
  const RMat a = rng.runiform(3, 3 * 2);
  const RMat n =
      kron(a, RMat::Identity(2, 2)) * kron(RMat::Identity(3, 3), u);
  const auto sl = semilocalize(n, sys);
  const RMat rebuilt =
      kron(sl.A, RMat::Identity(2, 2)) * kron(RMat::Identity(3, 3), sl.U);
  print_line("reconstruction residual", (rebuilt - n).cwiseAbs().maxCoeff(),
             1e-9);
  print_line("row-stochasticity of U",
             check_stoch(sl.U, StochKind::row_stochastic, 0).residual, 1e-9);
  std::cout << "  environment letters: " << sl.d_E << "\n";
  return (rebuilt - n).cwiseAbs().maxCoeff() <= 1e-9 ? kExitPass
                                                     : kExitCriteria;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "generators of semigroups of semicausal maps and superchannels"};
  app.require_subcommand(1);

  std::string input, out, report_path, nf_path, nf_out;
  std::string picture = "heisenberg";
  std::string flavor = "superchannel";
  std::string kind = "quantum";
  std::string dims = "2,2,2";
  std::string times = "1.0";
  std::string gen_path, init_path, demo_name, fixture_out;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool verify = false;

  auto* check = app.add_subcommand(
      "check", "decide whether a map generates a semicausal/superchannel "
               "semigroup");
  check->add_option("input", input)->required();
  check->add_option("--picture", picture);
  check->add_option("--flavor", flavor);
  check->add_option("--tol", tol);
  check->add_option("--out", out);

  auto* extract = app.add_subcommand(
      "extract", "recover normal-form operators from a generator");
  extract->add_option("input", input)->required();
  extract->add_option("--picture", picture);
  extract->add_option("--tol", tol);
  extract->add_option("--out", out);
  extract->add_option("--report", report_path);

  auto* synthesize = app.add_subcommand(
      "synthesize", "build a generator from a normal form or from a seed");
  synthesize->add_option("--kind", kind);
  synthesize->add_option("--dims", dims);
  synthesize->add_option("--seed", seed);
  synthesize->add_option("--flavor", flavor);
  synthesize->add_option("--picture", picture);
  synthesize->add_option("--nf", nf_path);
  synthesize->add_option("--nf-out", nf_out);
  synthesize->add_option("--out", out);

  auto* evolve = app.add_subcommand(
      "evolve", "integrate the master equation at given times");
  evolve->add_option("--gen", gen_path)->required();
  evolve->add_option("--initial", init_path)->required();
  evolve->add_option("--times", times)->required();
  evolve->add_flag("--verify", verify);
  evolve->add_option("--out", out);

  auto* demo = app.add_subcommand("demo", "run a named end-to-end scenario");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--fixture-out", fixture_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(input, picture, flavor, tol, out);
    if (*extract) return cmd_extract(input, picture, tol, out, report_path);
    if (*synthesize)
      return cmd_synthesize(kind, dims, seed, flavor, picture, nf_path, out,
                            nf_out);
    if (*evolve) return cmd_evolve(gen_path, init_path, times, verify, out);
    if (*demo) {
      if (demo_name == "two-atom") return demo_two_atom(fixture_out);
      if (demo_name == "aging-board") return demo_aging_board();
      if (demo_name == "classical-copy") return demo_classical_copy();
      std::cerr << "unknown demo " << demo_name << "\n";
      return kExitParse;
    }
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitDims;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCriteria;
  } catch (const std::domain_error& e) {
    // InvariantViolation, NotPsd, NotSemicausal, NotNonnegative,
    // NotPartialIsometry, LstsqResidualTooLarge
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
