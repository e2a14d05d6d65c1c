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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace semicausal {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Dimension pair for operators on a bipartite space H_A ⊗ H_B.
/// Basis ordering is A-major: product index k <-> (i, j) with k = i*d_B + j.
struct BipartiteSystem {
  int d_A = 1;
  int d_B = 1;
  int dim() const { return d_A * d_B; }
};

/// Heisenberg maps act on observables (row picture classically), Schrodinger
/// maps act on states (column picture classically).
enum class Picture { heisenberg, schrodinger };

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotPsd : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotPartialIsometry : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotSemicausal : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotNonnegative : std::domain_error {
  using std::domain_error::domain_error;
};
struct CheckFailed : std::domain_error {
  using std::domain_error::domain_error;
};
struct LstsqResidualTooLarge : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvariantViolation : std::domain_error {
  using std::domain_error::domain_error;
};

/// Base scale of the residual tolerance policy. Every verdict compares a raw
/// residual against slack(base, norm) = base * (1 + ||M||_F), so callers can
/// override the base and still reproduce the decision from reported residuals.
inline constexpr double kDefaultTol = 1e-9;

inline double slack(double base, double fro_norm) {
  return base * (1.0 + fro_norm);
}

}  // namespace semicausal
