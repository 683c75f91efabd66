// Copyright 2026 The opaqnet authors
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

#include "opaqnet/pauli.hpp"
#include "opaqnet/program.hpp"

namespace opaqnet {

inline constexpr int kDenseRegisterLimit = 10;

// Explicit (generally unnormalized) density operator on n registers, with
// register q mapped to bit q of the basis index.
struct DenseState {
  int n = 0;
  Eigen::MatrixXcd rho;

  static DenseState from_prep(const PrepSpec& prep);

  DenseState apply_step(const ProgramStep& step) const;
  DenseState apply_program(const Program& program) const;

  double trace() const { return rho.trace().real(); }
  Eigen::MatrixXcd partial_trace(const std::vector<int>& keep) const;
};

// Matrix of a signed Pauli string on `width` registers.
Eigen::MatrixXcd pauli_matrix(const PauliString& p, int width);

// Explicit matrix of a Pauli expansion (width <= kDenseRegisterLimit is not
// enforced here; callers gate on the configured interface bound).
Eigen::MatrixXcd to_dense(const PauliCoefficients& coeffs);

// Half trace norm of (x - y) for Hermitian inputs.
double trace_distance(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

// Unitary of an entangling step as a full 2^n matrix.
Eigen::MatrixXcd gate_matrix(const GateStep& g, int n);

}  // namespace opaqnet
