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

#include <vector>

#include "opaqnet/pauli.hpp"
#include "opaqnet/program.hpp"
#include "opaqnet/rational.hpp"

namespace opaqnet {

// Weighted mixed-state stabilizer tableau: a nonnegative rational weight w
// together with s <= n independent, pairwise commuting signed Pauli
// generators. The represented operator is
//
//   Den(T) = w * 2^-n * sum of all 2^s group elements,
//
// so Tr(Den(T)) = w. All operations are value-semantic: they return a new
// tableau and never mutate their input.
class Tableau {
 public:
  Tableau() = default;

  // Weight-1 pure state from a deterministic preparation covering n registers.
  static Tableau from_prep(const PrepSpec& prep);

  int num_registers() const { return n_; }
  const Rational& weight() const { return weight_; }
  const std::vector<PauliString>& generators() const { return generators_; }
  bool is_zero() const { return weight_ == 0; }

  Tableau apply_gate(const GateStep& g) const;

  // Den' = P Den P for P = (I + outcome*pauli)/2. Weight evolves by a factor
  // in {0, 1/2, 1}.
  Tableau apply_projection(const PauliString& pauli, int outcome) const;

  // Reset channel on one register: rho -> |v><v|_reg (x) Tr_reg(rho).
  Tableau apply_prep(int reg, char basis) const;

  // Replacement channel: rho -> rho_prep * Tr(rho).
  Tableau apply_replace_all(const PrepSpec& prep) const;

  Tableau apply_step(const ProgramStep& step) const;
  Tableau apply_program(const Program& program) const;

  // Exact Pauli expansion of the partial trace onto the given (ascending)
  // register subset.
  PauliCoefficients reduce_to(const std::vector<int>& registers) const;

  // Full-register expansion of Den; mainly for oracle comparisons.
  PauliCoefficients den_coefficients() const;

  // True iff generators pairwise commute and are GF(2)-independent.
  bool check_invariants() const;

 private:
  int n_ = 0;
  Rational weight_ = 0;
  std::vector<PauliString> generators_;

  // Membership of the signed Pauli p in the generated group. Returns
  // +1 / -1 when +p resp. -p is a group element, 0 when the bit pattern is
  // not in the span.
  int signed_membership(const PauliString& p) const;
};

}  // namespace opaqnet
