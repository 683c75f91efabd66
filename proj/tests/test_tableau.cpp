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

#include "opaqnet/tableau.hpp"

#include <random>

#include "doctest.h"
#include "opaqnet/dense.hpp"

using namespace opaqnet;

namespace {

PrepSpec all_zero(int n) {
  PrepSpec p;
  p.basis.assign(n, '0');
  return p;
}

PrepSpec repeater_prep() {
  // Two Bell pairs on (0,1) and (2,3), memory register 4 in |0>.
  PrepSpec p = all_zero(5);
  p.entangle = {
      {GateKind::H, 0, -1}, {GateKind::CNOT, 0, 1},
      {GateKind::H, 2, -1}, {GateKind::CNOT, 2, 3},
  };
  return p;
}

// Random program generator shared with the CLI oracle suite at the test
// level: preps, one- and two-qubit Cliffords, and Pauli projections.
Program random_program(std::mt19937_64& rng, int n, int length) {
  Program prog;
  std::uniform_int_distribution<int> step_kind(0, 9);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  for (int i = 0; i < length; ++i) {
    int k = step_kind(rng);
    if (k == 0) {
      const char bases[] = {'0', '1', '+', '-'};
      prog.push_back(PrepStep{qubit(rng), bases[rng() % 4]});
    } else if (k <= 6) {
      const GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::X,
                                GateKind::Y, GateKind::Z, GateKind::CNOT,
                                GateKind::CZ};
      GateKind kind = kinds[rng() % 7];
      GateStep g{kind, qubit(rng), -1};
      if (kind == GateKind::CNOT || kind == GateKind::CZ) {
        if (n < 2) { --i; continue; }
        do { g.q1 = qubit(rng); } while (g.q1 == g.q0);
      }
      prog.push_back(g);
    } else {
      PauliString p;
      for (int q = 0; q < n; ++q) {
        int axis = rng() % 4;
        const char axes[] = {'I', 'X', 'Y', 'Z'};
        if (axes[axis] != 'I') {
          PauliString f = PauliString::single(axes[axis], q);
          p.x |= f.x;
          p.z |= f.z;
        }
      }
      if (p.is_identity_pattern()) { --i; continue; }
      prog.push_back(ProjectStep{p, rng() % 2 ? +1 : -1});
    }
  }
  return prog;
}

double max_entry_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("init tableau examples") {
  Tableau t = Tableau::from_prep(all_zero(3));
  CHECK(t.weight() == 1);
  REQUIRE(t.generators().size() == 3);
  CHECK(t.generators()[0] == PauliString::single('Z', 0));
  CHECK(t.generators()[1] == PauliString::single('Z', 1));
  CHECK(t.generators()[2] == PauliString::single('Z', 2));

  PrepSpec plus;
  plus.basis = {'+'};
  Tableau tp = Tableau::from_prep(plus);
  REQUIRE(tp.generators().size() == 1);
  CHECK(tp.generators()[0] == PauliString::single('X', 0));

  Tableau tr = Tableau::from_prep(repeater_prep());
  CHECK(tr.weight() == 1);
  REQUIRE(tr.generators().size() == 5);
  CHECK(tr.generators()[0] == pauli_from_string("XXIII", 5));
  CHECK(tr.generators()[1] == pauli_from_string("ZZIII", 5));
  CHECK(tr.generators()[2] == pauli_from_string("IIXXI", 5));
  CHECK(tr.generators()[3] == pauli_from_string("IIZZI", 5));
  CHECK(tr.generators()[4] == pauli_from_string("IIIIZ", 5));
}

TEST_CASE("clifford conjugation basics") {
  Tableau t = Tableau::from_prep(all_zero(1));
  t = t.apply_gate({GateKind::H, 0, -1});
  CHECK(t.generators()[0] == PauliString::single('X', 0));

  Tableau bell = Tableau::from_prep(all_zero(2))
                     .apply_gate({GateKind::H, 0, -1})
                     .apply_gate({GateKind::CNOT, 0, 1});
  CHECK(bell.generators()[0] == pauli_from_string("XX", 2));
  CHECK(bell.generators()[1] == pauli_from_string("ZZ", 2));
  CHECK(bell.weight() == 1);
}

TEST_CASE("projection weight cases") {
  Tableau zero = Tableau::from_prep(all_zero(1));
  PauliString z = PauliString::single('Z', 0);

  CHECK(zero.apply_projection(z, +1).weight() == 1);
  CHECK(zero.apply_projection(z, -1).weight() == 0);

  PrepSpec plus;
  plus.basis = {'+'};
  Tableau p = Tableau::from_prep(plus);
  Tableau projected = p.apply_projection(z, +1);
  CHECK(projected.weight() == Rational(1, 2));
  CHECK(projected.generators()[0] == z);
}

TEST_CASE("replacement channel") {
  Tableau t = Tableau::from_prep(repeater_prep());
  PauliString z2 = PauliString::single('Z', 1);
  Tableau half = t.apply_projection(z2, +1);
  CHECK(half.weight() == Rational(1, 2));
  Tableau replaced = half.apply_replace_all(repeater_prep());
  CHECK(replaced.weight() == Rational(1, 2));
  CHECK(replaced.generators() == t.generators());

  Tableau annihilated = t.apply_projection(PauliString::single('Z', 4), -1);
  CHECK(annihilated.weight() == 0);
  CHECK(annihilated.apply_replace_all(repeater_prep()).weight() == 0);
}

TEST_CASE("reduce_to examples") {
  Tableau bell = Tableau::from_prep(all_zero(2))
                     .apply_gate({GateKind::H, 0, -1})
                     .apply_gate({GateKind::CNOT, 0, 1});
  PauliCoefficients one = bell.reduce_to({0});
  CHECK(one.coeffs.size() == 1);
  CHECK(one.coeff({0, 0}) == Rational(1, 2));

  // Untouched |0> on the memory register.
  Tableau rep = Tableau::from_prep(repeater_prep());
  PauliCoefficients mem = rep.reduce_to({4});
  CHECK(mem.coeff({0, 0}) == Rational(1, 2));
  CHECK(mem.coeff({0, 1}) == Rational(1, 2));
  CHECK(mem.coeffs.size() == 2);

  // GHZ on (0,1,2) reduced to register 2 is maximally mixed.
  Tableau ghz = Tableau::from_prep(all_zero(3))
                    .apply_gate({GateKind::H, 0, -1})
                    .apply_gate({GateKind::CNOT, 0, 1})
                    .apply_gate({GateKind::CNOT, 0, 2});
  PauliCoefficients m = ghz.reduce_to({2});
  CHECK(m.coeffs.size() == 1);
  CHECK(m.coeff({0, 0}) == Rational(1, 2));
}

TEST_CASE("prep step resets one register") {
  Tableau bell = Tableau::from_prep(all_zero(2))
                     .apply_gate({GateKind::H, 0, -1})
                     .apply_gate({GateKind::CNOT, 0, 1});
  Tableau reset = bell.apply_prep(0, '0');
  CHECK(reset.weight() == 1);
  // Register 1 is left maximally mixed: Den = |0><0| (x) I/2.
  DenseState d = DenseState::from_prep(all_zero(2));
  d = d.apply_program({GateStep{GateKind::H, 0, -1}, GateStep{GateKind::CNOT, 0, 1},
                       PrepStep{0, '0'}});
  CHECK(max_entry_diff(to_dense(reset.den_coefficients()), d.rho) < 1e-12);
}

TEST_CASE("dense oracle equivalence on random programs") {
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    PrepSpec prep;
    const char bases[] = {'0', '1', '+', '-'};
    for (int q = 0; q < n; ++q) prep.basis.push_back(bases[rng() % 4]);
    Program prog = random_program(rng, n, 1 + static_cast<int>(rng() % 30));

    Tableau t = Tableau::from_prep(prep).apply_program(prog);
    DenseState d = DenseState::from_prep(prep).apply_program(prog);

    REQUIRE(t.check_invariants());
    CHECK(std::abs(to_double(t.weight()) - d.trace()) < 1e-12);
    CHECK(max_entry_diff(to_dense(t.den_coefficients()), d.rho) < 1e-12);

    // Weight stays a dyadic 2^-k product (or zero).
    Rational w = t.weight();
    if (w != 0) {
      CHECK(numerator(w) == 1);
      Integer den = denominator(w);
      while (den % 2 == 0) den /= 2;
      CHECK(den == 1);
    }

    // Partial trace on a random subset agrees entrywise.
    std::vector<int> subset;
    for (int q = 0; q < n; ++q)
      if (rng() % 2) subset.push_back(q);
    if (!subset.empty()) {
      CHECK(max_entry_diff(to_dense(t.reduce_to(subset)), d.partial_trace(subset)) <
            1e-12);
    }
  }
}

TEST_CASE("weight monotone under projection, invariant under cliffords") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    PrepSpec prep = all_zero(n);
    Tableau t = Tableau::from_prep(prep).apply_program(random_program(rng, n, 10));
    Rational before = t.weight();
    Tableau g = t.apply_gate({GateKind::H, static_cast<int>(rng() % n), -1});
    CHECK(g.weight() == before);
    PauliString p = PauliString::single('Z', static_cast<int>(rng() % n));
    Tableau pr = t.apply_projection(p, rng() % 2 ? 1 : -1);
    CHECK(pr.weight() <= before);
  }
}

TEST_CASE("reduce_to over all registers reproduces the denotation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    Tableau t = Tableau::from_prep(all_zero(n)).apply_program(random_program(rng, n, 12));
    DenseState d = DenseState::from_prep(all_zero(n));
    // den_coefficients is itself reduce_to over the full set; compare against
    // independent matrix accumulation of each pattern.
    PauliCoefficients c = t.den_coefficients();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (const auto& [pat, v] : c.coeffs) {
      PauliString p{pat.x, pat.z, false};
      sum += to_double(v) * pauli_matrix(p, n);
    }
    CHECK(max_entry_diff(sum, to_dense(c)) == 0.0);
    (void)d;
  }
}
