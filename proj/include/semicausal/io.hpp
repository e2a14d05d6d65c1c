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

#include <string>

#include <json.hpp>

#include "semicausal/classical.hpp"
#include "semicausal/quantum.hpp"
#include "semicausal/superchannel.hpp"
#include "semicausal/types.hpp"

// Deterministic UTF-8 JSON container, schema_version "1". Complex entries
// are [re, im] pairs; kind selects the payload layout:
//   complex_matrix | real_matrix | superop | supermap_gen |
//   normal_form_semicausal | normal_form_superchannel | classical_gen_nf

namespace semicausal::io {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json cmat_to_json(const CMat& m);
CMat cmat_from_json(const json& j);
json rmat_to_json(const RMat& m);
RMat rmat_from_json(const json& j);

json make_complex_matrix_file(const CMat& m);
json make_real_matrix_file(const RMat& m, const BipartiteSystem& sys);
json make_superop_file(const CMat& l, const BipartiteSystem& sys);
json make_supermap_file(const SupermapGen& g);
json make_semicausal_nf_file(const SemicausalNormalForm& nf);
json make_superchannel_nf_file(const SuperchannelNormalForm& nf);
json make_classical_nf_file(const ClassicalGenNF& nf);

/// Parse from text with schema validation (version, kind, finite entries).
json parse_matrix_file(const std::string& text);
json load_matrix_file(const std::string& path);
void save_json(const json& j, const std::string& path);

std::string kind_of(const json& file);

CMat load_complex_matrix(const json& file);
RMat load_real_matrix(const json& file, BipartiteSystem* sys);
CMat load_superop(const json& file, BipartiteSystem* sys);
SupermapGen load_supermap(const json& file);
SemicausalNormalForm load_semicausal_nf(const json& file);
SuperchannelNormalForm load_superchannel_nf(const json& file);
ClassicalGenNF load_classical_nf(const json& file);

/// Machine-readable report: named verdicts, raw residuals, tolerances in
/// force, wall time.
json report_to_json(const CheckReport& rep, bool superchannel_criteria,
                    double tol, double wall_ms);
json classical_report_to_json(const ClassicalGenReport& rep, double tol,
                              double wall_ms);

}  // namespace semicausal::io
