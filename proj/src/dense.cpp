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

#include "opaqnet/dense.hpp"

#include <stdexcept>

namespace opaqnet {

using Complex = std::complex<double>;

namespace {

Eigen::Vector2cd basis_vector(char basis) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (basis) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {s, s};
    case '-': return {s, -s};
  }
  throw std::invalid_argument("bad basis symbol");
}

Eigen::Matrix2cd one_qubit_matrix(GateKind k) {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H: m << s, s, s, -s; return m;
    case GateKind::S: m << 1, 0, 0, Complex(0, 1); return m;
    case GateKind::X: m << 0, 1, 1, 0; return m;
    case GateKind::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; return m;
    case GateKind::Z: m << 1, 0, 0, -1; return m;
    default: throw std::logic_error("not a one-qubit gate");
  }
}

}  // namespace

Eigen::MatrixXcd gate_matrix(const GateStep& g, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  if (g.kind == GateKind::CNOT) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      Eigen::Index j = (i & (Eigen::Index{1} << g.q0)) ? i ^ (Eigen::Index{1} << g.q1) : i;
      u(j, i) = 1.0;
    }
    return u;
  }
  if (g.kind == GateKind::CZ) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      bool both = (i & (Eigen::Index{1} << g.q0)) && (i & (Eigen::Index{1} << g.q1));
      u(i, i) = both ? -1.0 : 1.0;
    }
    return u;
  }
  Eigen::Matrix2cd m = one_qubit_matrix(g.kind);
  const Eigen::Index bit = Eigen::Index{1} << g.q0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        u(i | (a ? bit : 0), i | (b ? bit : 0)) = m(a, b);
  }
  return u;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p, int width) {
  const Eigen::Index dim = Eigen::Index{1} << width;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = col ^ static_cast<Eigen::Index>(p.x);
    Complex amp = p.negative ? -1.0 : 1.0;
    for (int q = 0; q < width; ++q) {
      uint64_t bit = uint64_t{1} << q;
      bool bx = p.x & bit, bz = p.z & bit;
      bool colbit = col & static_cast<Eigen::Index>(bit);
      if (bx && bz) amp *= colbit ? Complex(0, -1) : Complex(0, 1);  // Y
      else if (bz && colbit) amp = -amp;                             // Z
    }
    m(row, col) = amp;
  }
  return m;
}

Eigen::MatrixXcd to_dense(const PauliCoefficients& coeffs) {
  const Eigen::Index dim = Eigen::Index{1} << coeffs.width;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [pat, value] : coeffs.coeffs) {
    PauliString p{pat.x, pat.z, false};
    m += to_double(value) * pauli_matrix(p, coeffs.width);
  }
  return m;
}

double trace_distance(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  Eigen::MatrixXcd d = x - y;
  if ((d - d.adjoint()).norm() > 1e-9)
    throw std::invalid_argument("trace_distance: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DenseState DenseState::from_prep(const PrepSpec& prep) {
  DenseState s;
  s.n = prep.size();
  if (s.n > kDenseRegisterLimit)
    throw std::invalid_argument("dense backend register bound exceeded");
  const Eigen::Index dim = Eigen::Index{1} << s.n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0;
  for (int q = 0; q < s.n; ++q) {
    Eigen::Vector2cd v = basis_vector(prep.basis[q]);
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & bit) continue;
      next(i) += psi(i) * v(0);
      next(i | bit) += psi(i) * v(1);
    }
    psi = next;
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  for (const auto& g : prep.entangle) {
    Eigen::MatrixXcd u = gate_matrix(g, s.n);
    rho = u * rho * u.adjoint();
  }
  s.rho = rho;
  return s;
}

DenseState DenseState::apply_step(const ProgramStep& step) const {
  DenseState out;
  out.n = n;
  const Eigen::Index dim = rho.rows();
  if (const auto* p = std::get_if<PrepStep>(&step)) {
    // Reset channel: sum_b (|v><b| (x) I) rho (|b><v| (x) I).
    Eigen::Vector2cd v = basis_vector(p->basis);
    const Eigen::Index bit = Eigen::Index{1} << p->reg;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < 2; ++b) {
      Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & bit) continue;
        Eigen::Index src = i | (b ? bit : 0);
        k(i, src) += v(0);
        k(i | bit, src) += v(1);
      }
      acc += k * rho * k.adjoint();
    }
    out.rho = acc;
    return out;
  }
  if (const auto* g = std::get_if<GateStep>(&step)) {
    Eigen::MatrixXcd u = gate_matrix(*g, n);
    out.rho = u * rho * u.adjoint();
    return out;
  }
  if (const auto* pr = std::get_if<ProjectStep>(&step)) {
    Eigen::MatrixXcd pm = pauli_matrix(pr->pauli, n);
    Eigen::MatrixXcd proj =
        0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + double(pr->outcome) * pm);
    out.rho = proj * rho * proj;
    return out;
  }
  const auto& rep = std::get<ReplaceAllStep>(step);
  DenseState fresh = from_prep(rep.spec);
  out.rho = fresh.rho * rho.trace();
  return out;
}

DenseState DenseState::apply_program(const Program& program) const {
  DenseState s = *this;
  for (const auto& step : program) s = s.apply_step(step);
  return s;
}

Eigen::MatrixXcd DenseState::partial_trace(const std::vector<int>& keep) const {
  const int k = static_cast<int>(keep.size());
  const Eigen::Index kdim = Eigen::Index{1} << k;
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    bool kept = false;
    for (int r : keep) kept |= (r == q);
    if (!kept) traced.push_back(q);
  }
  const Eigen::Index tdim = Eigen::Index{1} << traced.size();
  auto expand = [&](Eigen::Index kept_bits, Eigen::Index traced_bits) {
    Eigen::Index full = 0;
    for (int i = 0; i < k; ++i)
      if (kept_bits & (Eigen::Index{1} << i)) full |= Eigen::Index{1} << keep[i];
    for (size_t i = 0; i < traced.size(); ++i)
      if (traced_bits & (Eigen::Index{1} << i)) full |= Eigen::Index{1} << traced[i];
    return full;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
  for (Eigen::Index a = 0; a < kdim; ++a)
    for (Eigen::Index b = 0; b < kdim; ++b)
      for (Eigen::Index t = 0; t < tdim; ++t)
        out(a, b) += rho(expand(a, t), expand(b, t));
  return out;
}

}  // namespace opaqnet
