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
#include <random>

#include "semicausal/types.hpp"

namespace semicausal {

/// Seeded random source for all stochastic constructions. Same seed, same
/// sequence within a build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }

  RMat rgaussian(Eigen::Index rows, Eigen::Index cols);
  RMat runiform(Eigen::Index rows, Eigen::Index cols);
  CMat cgaussian(Eigen::Index rows, Eigen::Index cols);

  /// Hermitian Gaussian matrix (G + G†)/2.
  CMat hermitian(int n);

  /// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
  /// phases absorbed into Q.
  CMat haar_unitary(int n);

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace semicausal
