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

#include "semicausal/io.hpp"
#include "semicausal/random.hpp"

using namespace semicausal;
using io::json;

TEST_CASE("every emitted file re-parses and revalidates") {
  const auto nf = random_semicausal_nf(2, 3, 2, 101);
  const auto gen = synthesize_semicausal(nf);
  const BipartiteSystem sys{2, 3};

  const json superop = io::make_superop_file(gen.heisenberg, sys);
  const json parsed = io::parse_matrix_file(superop.dump());
  BipartiteSystem back;
  CHECK((io::load_superop(parsed, &back) - gen.heisenberg).norm() == 0.0);
  CHECK(back.d_A == 2);
  CHECK(back.d_B == 3);

  const json nf_file = io::make_semicausal_nf_file(nf);
  const auto nf2 =
      io::load_semicausal_nf(io::parse_matrix_file(nf_file.dump()));
  CHECK(nf2.U == nf.U);
  CHECK(nf2.A == nf.A);
  CHECK(nf2.B == nf.B);
  CHECK(nf2.K_A == nf.K_A);
  CHECK(nf2.H_B == nf.H_B);

  const auto snf = random_superchannel_nf(2, 2, 2, 102, Flavor::superchannel);
  const json snf_file = io::make_superchannel_nf_file(snf);
  const auto snf2 =
      io::load_superchannel_nf(io::parse_matrix_file(snf_file.dump()));
  CHECK(snf2.sigma_index == snf.sigma_index);
  CHECK(snf2.U == snf.U);
  CHECK(snf2.K_A == snf.K_A);

  const auto cnf =
      random_classical_nf({2, 2}, 3, 103, Picture::schrodinger, true);
  const auto cnf2 = io::load_classical_nf(
      io::parse_matrix_file(io::make_classical_nf_file(cnf).dump()));
  CHECK(cnf2.picture == Picture::schrodinger);
  CHECK(cnf2.U == cnf.U);
  CHECK(cnf2.A == cnf.A);
  CHECK(cnf2.K_A == cnf.K_A);
  CHECK(cnf2.B_list.size() == cnf.B_list.size());
  for (size_t i = 0; i < cnf.B_list.size(); ++i)
    CHECK(cnf2.B_list[i] == cnf.B_list[i]);

  const SupermapGen g =
      synthesize_superchannel_generator(snf, Flavor::superchannel);
  const SupermapGen g2 =
      io::load_supermap(io::parse_matrix_file(io::make_supermap_file(g).dump()));
  CHECK((g2.l_hat - g.l_hat).norm() == 0.0);
}

TEST_CASE("serialization is deterministic") {
  const auto a = synthesize_semicausal(random_semicausal_nf(2, 2, 2, 7));
  const auto b = synthesize_semicausal(random_semicausal_nf(2, 2, 2, 7));
  const BipartiteSystem sys{2, 2};
  CHECK(io::make_superop_file(a.heisenberg, sys).dump() ==
        io::make_superop_file(b.heisenberg, sys).dump());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(io::parse_matrix_file("{not json"), io::ParseError);
  CHECK_THROWS_AS(io::parse_matrix_file("{\"kind\": \"superop\"}"),
                  io::ParseError);
  CHECK_THROWS_AS(
      io::parse_matrix_file(
          R"({"schema_version": "2", "kind": "superop", "dims": {}, "data": []})"),
      io::ParseError);
  // non-finite entries are rejected
  json bad = io::make_complex_matrix_file(CMat::Identity(2, 2));
  bad["data"][0][0][0] = "nan";
  CHECK_THROWS(io::cmat_from_json(bad["data"]));
}

TEST_CASE("dimension mismatches are flagged") {
  json file = io::make_superop_file(CMat::Zero(16, 16), BipartiteSystem{2, 2});
  file["dims"]["d_B"] = 3;  // now inconsistent with the 16x16 payload
  CHECK_THROWS_AS(io::load_superop(io::parse_matrix_file(file.dump()), nullptr),
                  DimensionError);
}

TEST_CASE("reports carry residuals even when verdicts pass") {
  const BipartiteSystem sys{2, 2};
  const auto rep = check_semicausal_generator(CMat::Zero(16, 16), sys,
                                              Picture::heisenberg);
  const json j = io::report_to_json(rep, false, kDefaultTol, 1.25);
  CHECK(j["verdicts"]["semicausal"].get<bool>());
  CHECK(j["residuals"].contains("semicausal"));
  CHECK(j["residuals"].contains("min_cond_cp_eig"));
  CHECK(j["tolerances"]["base"].get<double>() == kDefaultTol);
  CHECK(j.contains("wall_time_ms"));

  const auto g = SupermapGen{2, 2, CMat::Zero(16, 16)};
  const json js =
      io::report_to_json(check_superchannel_generator(g), true, 1e-9, 0.5);
  CHECK(js["verdicts"]["preselecting"].get<bool>());
  CHECK(js["verdicts"]["superchannel"].get<bool>());
}
