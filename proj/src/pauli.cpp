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

#include "opaqnet/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace opaqnet {

PauliString PauliString::single(char axis, int qubit, bool neg) {
  PauliString p;
  p.negative = neg;
  uint64_t bit = uint64_t{1} << qubit;
  switch (axis) {
    case 'I': break;
    case 'X': p.x = bit; break;
    case 'Y': p.x = bit; p.z = bit; break;
    case 'Z': p.z = bit; break;
    default: throw std::invalid_argument("bad Pauli axis");
  }
  return p;
}

bool PauliString::commutes_with(const PauliString& o) const {
  // Symplectic form: strings commute iff <a.x, b.z> + <a.z, b.x> = 0 mod 2.
  int parity = std::popcount(x & o.z) + std::popcount(z & o.x);
  return (parity & 1) == 0;
}

int pauli_phase_exponent(const PauliString& a, const PauliString& b) {
  // Per qubit: XZ = -iY, ZX = +iY, XY = iZ, YX = -iZ, YZ = iX, ZY = -iX.
  // Using the Levi-Civita convention on (x,z) pairs, the accumulated i-power
  // for a*b is sum over qubits of g(a_q, b_q) where
  //   g(X,Z)=3, g(X,Y)=1, g(Y,X)=3, g(Y,Z)=1, g(Z,X)=1, g(Z,Y)=3, else 0.
  int k = 0;
  uint64_t both = (a.x | a.z) & (b.x | b.z);
  uint64_t m = both;
  while (m) {
    uint64_t bit = m & (~m + 1);
    m ^= bit;
    bool ax = a.x & bit, az = a.z & bit;
    bool bx = b.x & bit, bz = b.z & bit;
    // identical single-qubit Paulis contribute nothing
    if (ax == bx && az == bz) continue;
    // classify via the cyclic order X(1,0) -> Y(1,1) -> Z(0,1)
    auto idx = [](bool xx, bool zz) { return xx ? (zz ? 1 : 0) : 2; };
    int ia = idx(ax, az), ib = idx(bx, bz);
    // successor in the cycle multiplies with +i, predecessor with -i
    if ((ia + 1) % 3 == ib)
      k += 1;
    else
      k += 3;
  }
  return k & 3;
}

PauliString PauliString::mul(const PauliString& o) const {
  int k = pauli_phase_exponent(*this, o);
  if (k & 1) throw std::logic_error("Pauli product has imaginary phase");
  PauliString r;
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  r.negative = negative ^ o.negative ^ (k == 2);
  return r;
}

char PauliString::axis_at(int qubit) const {
  uint64_t bit = uint64_t{1} << qubit;
  bool bx = x & bit, bz = z & bit;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::string PauliString::str(int n) const {
  std::string s(negative ? "-" : "+");
  for (int q = 0; q < n; ++q) s.push_back(axis_at(q));
  return s;
}

PauliString pauli_from_string(const std::string& text, int n) {
  PauliString p;
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    p.negative = text[i] == '-';
    ++i;
  }
  if (static_cast<int>(text.size() - i) != n)
    throw std::invalid_argument("Pauli literal has wrong width: " + text);
  for (int q = 0; q < n; ++q, ++i) {
    uint64_t bit = uint64_t{1} << q;
    switch (text[i]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default: throw std::invalid_argument("bad Pauli letter in " + text);
    }
  }
  return p;
}

Rational PauliCoefficients::coeff(const Pattern& p) const {
  auto it = coeffs.find(p);
  return it == coeffs.end() ? Rational(0) : it->second;
}

Rational PauliCoefficients::trace() const {
  Rational id = coeff({0, 0});
  Rational scale = 1;
  for (int i = 0; i < width; ++i) scale *= 2;
  return id * scale;
}

void PauliCoefficients::add(const Pattern& p, const Rational& value) {
  auto [it, inserted] = coeffs.emplace(p, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs.erase(it);
  } else if (value == 0) {
    coeffs.erase(it);
  }
}

void PauliCoefficients::add_scaled(const PauliCoefficients& other,
                                   const Rational& scale) {
  if (other.width != width)
    throw std::invalid_argument("interface width mismatch");
  for (const auto& [p, v] : other.coeffs) add(p, v * scale);
}

void PauliCoefficients::scale(const Rational& factor) {
  if (factor == 0) {
    coeffs.clear();
    return;
  }
  for (auto& [p, v] : coeffs) v *= factor;
}

void PauliCoefficients::prune() {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->second == 0)
      it = coeffs.erase(it);
    else
      ++it;
  }
}

bool PauliCoefficients::operator==(const PauliCoefficients& o) const {
  return width == o.width && registers == o.registers && coeffs == o.coeffs;
}

std::string PauliCoefficients::pattern_label(const Pattern& p, int width) {
  if (width == 0) return "I";
  std::string s;
  for (int q = 0; q < width; ++q) {
    uint64_t bit = uint64_t{1} << q;
    bool bx = p.x & bit, bz = p.z & bit;
    s.push_back(bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I'));
  }
  return s;
}

PauliCoefficients::Pattern PauliCoefficients::pattern_from_label(
    const std::string& label) {
  Pattern p;
  for (size_t q = 0; q < label.size(); ++q) {
    uint64_t bit = uint64_t{1} << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default: throw std::invalid_argument("bad Pauli label " + label);
    }
  }
  return p;
}

}  // namespace opaqnet
