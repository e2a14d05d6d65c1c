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

#include "semicausal/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace semicausal::io {

namespace {

constexpr const char* kSchemaVersion = "1";

void require_finite(double x) {
  if (!std::isfinite(x)) throw ParseError("matrix file: non-finite entry");
}

json dims_json(const BipartiteSystem& sys) {
  return json{{"d_A", sys.d_A}, {"d_B", sys.d_B}};
}

BipartiteSystem dims_from(const json& file) {
  const auto& d = file.at("dims");
  return BipartiteSystem{d.at("d_A").get<int>(), d.at("d_B").get<int>()};
}

json file_skeleton(const std::string& kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

void check_side(const CMat& m, Eigen::Index side, const char* what) {
  if (m.rows() != side || m.cols() != side)
    throw DimensionError(std::string(what) + ": data shape does not match dims");
}

}  // namespace

json cmat_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat cmat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError("complex matrix: expected a 2-d array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ParseError("complex matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[i][c];
      if (!e.is_array() || e.size() != 2)
        throw ParseError("complex matrix: entries must be [re, im]");
      const double re = e[0].get<double>(), im = e[1].get<double>();
      require_finite(re);
      require_finite(im);
      m(i, c) = Complex(re, im);
    }
  }
  return m;
}

json rmat_to_json(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMat rmat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError("real matrix: expected a 2-d array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  RMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ParseError("real matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double v = j[i][c].get<double>();
      require_finite(v);
      m(i, c) = v;
    }
  }
  return m;
}

json make_complex_matrix_file(const CMat& m) {
  json j = file_skeleton("complex_matrix");
  j["dims"] = json::object();
  j["data"] = cmat_to_json(m);
  return j;
}

json make_real_matrix_file(const RMat& m, const BipartiteSystem& sys) {
  json j = file_skeleton("real_matrix");
  j["dims"] = dims_json(sys);
  j["data"] = rmat_to_json(m);
  return j;
}

json make_superop_file(const CMat& l, const BipartiteSystem& sys) {
  check_side(l, static_cast<Eigen::Index>(sys.dim()) * sys.dim(),
             "superop file");
  json j = file_skeleton("superop");
  j["dims"] = dims_json(sys);
  j["data"] = cmat_to_json(l);
  return j;
}

json make_supermap_file(const SupermapGen& g) {
  json j = file_skeleton("supermap_gen");
  j["dims"] = dims_json({g.d_A, g.d_B});
  j["data"] = cmat_to_json(g.l_hat);
  return j;
}

json make_semicausal_nf_file(const SemicausalNormalForm& nf) {
  json j = file_skeleton("normal_form_semicausal");
  j["dims"] = json{{"d_A", nf.d_A}, {"d_B", nf.d_B}, {"d_E", nf.d_E}};
  j["data"] = json{{"U", cmat_to_json(nf.U)},
                   {"A", cmat_to_json(nf.A)},
                   {"B", cmat_to_json(nf.B)},
                   {"K_A", cmat_to_json(nf.K_A)},
                   {"H_B", cmat_to_json(nf.H_B)}};
  return j;
}

json make_superchannel_nf_file(const SuperchannelNormalForm& nf) {
  json j = file_skeleton("normal_form_superchannel");
  j["dims"] = json{{"d_A", nf.d_A}, {"d_B", nf.d_B}, {"d_E", nf.d_E}};
  j["data"] = json{{"sigma_index", nf.sigma_index},
                   {"U", cmat_to_json(nf.U)},
                   {"A", cmat_to_json(nf.A)},
                   {"B", cmat_to_json(nf.B)},
                   {"K_A", cmat_to_json(nf.K_A)},
                   {"H_B", cmat_to_json(nf.H_B)}};
  return j;
}

json make_classical_nf_file(const ClassicalGenNF& nf) {
  json j = file_skeleton("classical_gen_nf");
  j["dims"] = json{{"d_A", nf.d_A}, {"d_B", nf.d_B}, {"d_E", nf.d_E}};
  json blocks = json::array();
  for (const RMat& b : nf.B_list) blocks.push_back(rmat_to_json(b));
  json k = json::array();
  for (Eigen::Index i = 0; i < nf.K_A.size(); ++i) k.push_back(nf.K_A(i));
  j["data"] = json{
      {"picture",
       nf.picture == Picture::heisenberg ? "heisenberg" : "schrodinger"},
      {"U", rmat_to_json(nf.U)},
      {"A", rmat_to_json(nf.A)},
      {"K_A", std::move(k)},
      {"B", std::move(blocks)}};
  return j;
}

json parse_matrix_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("kind") ||
      !j.contains("data"))
    throw ParseError("matrix file: missing schema_version, kind or data");
  if (j["schema_version"].get<std::string>() != kSchemaVersion)
    throw ParseError("matrix file: unsupported schema_version");
  return j;
}

json load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string kind_of(const json& file) {
  return file.at("kind").get<std::string>();
}

CMat load_complex_matrix(const json& file) {
  return cmat_from_json(file.at("data"));
}

RMat load_real_matrix(const json& file, BipartiteSystem* sys) {
  if (sys) *sys = dims_from(file);
  return rmat_from_json(file.at("data"));
}

CMat load_superop(const json& file, BipartiteSystem* sys) {
  const BipartiteSystem s = dims_from(file);
  if (sys) *sys = s;
  CMat l = cmat_from_json(file.at("data"));
  check_side(l, static_cast<Eigen::Index>(s.dim()) * s.dim(), "superop file");
  return l;
}

SupermapGen load_supermap(const json& file) {
  const BipartiteSystem s = dims_from(file);
  CMat l = cmat_from_json(file.at("data"));
  check_side(l, static_cast<Eigen::Index>(s.dim()) * s.dim(),
             "supermap_gen file");
  return SupermapGen{s.d_A, s.d_B, std::move(l)};
}

SemicausalNormalForm load_semicausal_nf(const json& file) {
  const auto& d = file.at("dims");
  const auto& data = file.at("data");
  SemicausalNormalForm nf;
  nf.d_A = d.at("d_A").get<int>();
  nf.d_B = d.at("d_B").get<int>();
  nf.d_E = d.at("d_E").get<int>();
  nf.U = cmat_from_json(data.at("U"));
  nf.A = cmat_from_json(data.at("A"));
  nf.B = cmat_from_json(data.at("B"));
  nf.K_A = cmat_from_json(data.at("K_A"));
  nf.H_B = cmat_from_json(data.at("H_B"));
  return nf;
}

SuperchannelNormalForm load_superchannel_nf(const json& file) {
  const auto& d = file.at("dims");
  const auto& data = file.at("data");
  SuperchannelNormalForm nf;
  nf.d_A = d.at("d_A").get<int>();
  nf.d_B = d.at("d_B").get<int>();
  nf.d_E = d.at("d_E").get<int>();
  nf.sigma_index = data.at("sigma_index").get<int>();
  nf.U = cmat_from_json(data.at("U"));
  nf.A = cmat_from_json(data.at("A"));
  nf.B = cmat_from_json(data.at("B"));
  nf.K_A = cmat_from_json(data.at("K_A"));
  nf.H_B = cmat_from_json(data.at("H_B"));
  return nf;
}

ClassicalGenNF load_classical_nf(const json& file) {
  const auto& d = file.at("dims");
  const auto& data = file.at("data");
  ClassicalGenNF nf;
  nf.d_A = d.at("d_A").get<int>();
  nf.d_B = d.at("d_B").get<int>();
  nf.d_E = d.at("d_E").get<int>();
  const std::string pic = data.at("picture").get<std::string>();
  if (pic == "heisenberg")
    nf.picture = Picture::heisenberg;
  else if (pic == "schrodinger")
    nf.picture = Picture::schrodinger;
  else
    throw ParseError("classical_gen_nf: unknown picture " + pic);
  nf.U = rmat_from_json(data.at("U"));
  nf.A = rmat_from_json(data.at("A"));
  const auto& k = data.at("K_A");
  nf.K_A = RVec(k.size());
  for (size_t i = 0; i < k.size(); ++i) {
    const double v = k[i].get<double>();
    require_finite(v);
    nf.K_A(static_cast<Eigen::Index>(i)) = v;
  }
  for (const auto& b : data.at("B")) nf.B_list.push_back(rmat_from_json(b));
  return nf;
}

json report_to_json(const CheckReport& rep, bool superchannel_criteria,
                    double tol, double wall_ms) {
  json verdicts{{"hermitian", rep.hermitian_ok},
                {"conditionally_cp", rep.cond_cp_ok},
                {"semicausal", rep.semicausal_ok}};
  json residuals{{"hermitian", rep.herm_residual},
                 {"min_cond_cp_eig", rep.min_cond_cp_eig},
                 {"semicausal", rep.semicausal_residual}};
  if (superchannel_criteria) {
    verdicts["unital_reduced"] = rep.trace_or_unital_ok;
    verdicts["preselecting"] = rep.generator_ok();
    verdicts["superchannel"] = rep.generator_ok() && rep.trace_or_unital_ok;
    residuals["unital_reduced"] = rep.trace_or_unital_residual;
  } else {
    verdicts["trace_or_unital"] = rep.trace_or_unital_ok;
    residuals["trace_or_unital"] = rep.trace_or_unital_residual;
  }
  json j{{"verdicts", std::move(verdicts)},
         {"residuals", std::move(residuals)},
         {"tolerances", {{"base", tol}}},
         {"wall_time_ms", wall_ms}};
  if (rep.reduced_choi) j["reduced_choi"] = cmat_to_json(*rep.reduced_choi);
  return j;
}

json classical_report_to_json(const ClassicalGenReport& rep, double tol,
                              double wall_ms) {
  return json{{"verdicts",
               {{"offdiagonal_nonnegative", rep.nonneg_ok},
                {"semicausal", rep.semicausal_ok}}},
              {"residuals",
               {{"min_offdiagonal", rep.min_offdiag},
                {"semicausal", rep.semicausal_residual}}},
              {"tolerances", {{"base", tol}}},
              {"wall_time_ms", wall_ms},
              {"reduced", rmat_to_json(rep.reduced)}};
}

}  // namespace semicausal::io
