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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opaqnet/rational.hpp"

namespace opaqnet {

// Signed Hermitian Pauli string on up to 64 registers, packed as x/z bit
// masks. The sign is +1 or -1; the +-i phases that arise in intermediate
// products are tracked transiently by mul() and must cancel before a string
// is stored (anticommuting operands are the caller's responsibility).
struct PauliString {
  uint64_t x = 0;
  uint64_t z = 0;
  bool negative = false;  // sign = negative ? -1 : +1

  static PauliString identity() { return {}; }
  static PauliString single(char axis, int qubit, bool neg = false);

  bool is_identity_pattern() const { return x == 0 && z == 0; }
  bool commutes_with(const PauliString& o) const;
  uint64_t support() const { return x | z; }

  // Hermitian product; throws if the operands anticommute (the result would
  // carry an imaginary phase).
  PauliString mul(const PauliString& o) const;

  char axis_at(int qubit) const;  // 'I', 'X', 'Y' or 'Z'
  std::string str(int n) const;   // e.g. "+XIZ"

  bool operator==(const PauliString& o) const = default;
};

// i-power of the phase picked up when multiplying single-qubit factors of a
// by those of b (0..3, i.e. a*b = i^k * (a xor b) up to signs).
int pauli_phase_exponent(const PauliString& a, const PauliString& b);

// Parses "ZZ", "+XY", "-IZ" over `n` registers.
PauliString pauli_from_string(const std::string& text, int n);

// Exact Pauli expansion of a Hermitian operator on an ordered register
// subset. Keys are unsigned bit patterns local to the subset; values are the
// (real, rational) expansion coefficients.
struct PauliCoefficients {
  struct Pattern {
    uint64_t x = 0;
    uint64_t z = 0;
    auto operator<=>(const Pattern&) const = default;
  };

  int width = 0;                          // number of interface registers
  std::vector<int> registers;             // global indices, ascending
  std::map<Pattern, Rational> coeffs;     // zero entries are dropped

  Rational coeff(const Pattern& p) const;
  Rational trace() const;  // 2^width * identity coefficient

  void add(const Pattern& p, const Rational& value);
  void add_scaled(const PauliCoefficients& other, const Rational& scale);
  void scale(const Rational& factor);
  void prune();

  bool operator==(const PauliCoefficients& o) const;

  static std::string pattern_label(const Pattern& p, int width);
  static Pattern pattern_from_label(const std::string& label);
};

}  // namespace opaqnet
