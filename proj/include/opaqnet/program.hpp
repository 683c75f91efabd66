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

#include <string>
#include <variant>
#include <vector>

#include "opaqnet/pauli.hpp"

namespace opaqnet {

enum class GateKind { H, S, X, Y, Z, CNOT, CZ };

GateKind gate_kind_from_name(const std::string& name);
std::string gate_name(GateKind k);

struct GateStep {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  // second operand for CNOT/CZ, -1 otherwise
};

// Deterministic preparation of all n registers: a basis assignment followed
// by entangling Clifford steps. Always yields a pure stabilizer state.
struct PrepSpec {
  std::vector<char> basis;          // one of '0' '1' '+' '-' per register
  std::vector<GateStep> entangle;

  int size() const { return static_cast<int>(basis.size()); }
};

struct PrepStep {
  int reg = 0;
  char basis = '0';
};

struct ProjectStep {
  PauliString pauli;  // sign must be +
  int outcome = +1;   // projects onto (I + outcome*pauli)/2
};

struct ReplaceAllStep {
  PrepSpec spec;
};

using ProgramStep = std::variant<PrepStep, GateStep, ProjectStep, ReplaceAllStep>;
using Program = std::vector<ProgramStep>;

// Union of register indices a program touches.
uint64_t program_support(const Program& program);

}  // namespace opaqnet
