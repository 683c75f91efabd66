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

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace opaqnet {

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::H;
  if (name == "S") return GateKind::S;
  if (name == "X") return GateKind::X;
  if (name == "Y") return GateKind::Y;
  if (name == "Z") return GateKind::Z;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "CZ") return GateKind::CZ;
  throw std::invalid_argument("unknown gate: " + name);
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  throw std::logic_error("bad GateKind");
}

uint64_t program_support(const Program& program) {
  uint64_t mask = 0;
  for (const auto& step : program) {
    if (const auto* p = std::get_if<PrepStep>(&step)) {
      mask |= uint64_t{1} << p->reg;
    } else if (const auto* g = std::get_if<GateStep>(&step)) {
      mask |= uint64_t{1} << g->q0;
      if (g->q1 >= 0) mask |= uint64_t{1} << g->q1;
    } else if (const auto* pr = std::get_if<ProjectStep>(&step)) {
      mask |= pr->pauli.support();
    } else {
      mask = ~uint64_t{0};  // replace_all touches everything
    }
  }
  return mask;
}

Tableau Tableau::from_prep(const PrepSpec& prep) {
  Tableau t;
  t.n_ = prep.size();
  if (t.n_ > 64) throw std::invalid_argument("register count above 64");
  t.weight_ = 1;
  t.generators_.reserve(t.n_);
  for (int q = 0; q < t.n_; ++q) {
    switch (prep.basis[q]) {
      case '0': t.generators_.push_back(PauliString::single('Z', q)); break;
      case '1': t.generators_.push_back(PauliString::single('Z', q, true)); break;
      case '+': t.generators_.push_back(PauliString::single('X', q)); break;
      case '-': t.generators_.push_back(PauliString::single('X', q, true)); break;
      default: throw std::invalid_argument("bad basis symbol in prep");
    }
  }
  for (const auto& g : prep.entangle) t = t.apply_gate(g);
  return t;
}

namespace {

void conjugate_gate(PauliString& p, const GateStep& g) {
  uint64_t b0 = uint64_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H: {
      bool bx = p.x & b0, bz = p.z & b0;
      if (bx && bz) p.negative = !p.negative;
      p.x = (p.x & ~b0) | (bz ? b0 : 0);
      p.z = (p.z & ~b0) | (bx ? b0 : 0);
      break;
    }
    case GateKind::S: {
      bool bx = p.x & b0, bz = p.z & b0;
      if (bx && bz) p.negative = !p.negative;
      if (bx) p.z ^= b0;
      break;
    }
    case GateKind::X:
      if (p.z & b0) p.negative = !p.negative;
      break;
    case GateKind::Y:
      if (bool(p.x & b0) != bool(p.z & b0)) p.negative = !p.negative;
      break;
    case GateKind::Z:
      if (p.x & b0) p.negative = !p.negative;
      break;
    case GateKind::CNOT: {
      uint64_t b1 = uint64_t{1} << g.q1;
      bool xc = p.x & b0, zc = p.z & b0;
      bool xt = p.x & b1, zt = p.z & b1;
      if (xc && zt && (xt == zc)) p.negative = !p.negative;
      if (xc) p.x ^= b1;
      if (zt) p.z ^= b0;
      break;
    }
    case GateKind::CZ:
      // decomposed by the caller
      throw std::logic_error("CZ must be decomposed");
  }
}

}  // namespace

Tableau Tableau::apply_gate(const GateStep& g) const {
  if (g.q0 < 0 || g.q0 >= n_ ||
      ((g.kind == GateKind::CNOT || g.kind == GateKind::CZ) &&
       (g.q1 < 0 || g.q1 >= n_ || g.q1 == g.q0)))
    throw std::out_of_range("gate register out of range");
  if (g.kind == GateKind::CZ) {
    GateStep h{GateKind::H, g.q1, -1};
    GateStep cx{GateKind::CNOT, g.q0, g.q1};
    return apply_gate(h).apply_gate(cx).apply_gate(h);
  }
  Tableau t = *this;
  for (auto& p : t.generators_) conjugate_gate(p, g);
  return t;
}

int Tableau::signed_membership(const PauliString& p) const {
  // Solve over GF(2) for a generator combination matching p's bit pattern,
  // then compare accumulated signs.
  int s = static_cast<int>(generators_.size());
  std::vector<PauliString> rows = generators_;
  std::vector<uint64_t> combo(s);
  for (int i = 0; i < s; ++i) combo[i] = uint64_t{1} << i;

  PauliString target = p;
  uint64_t target_combo = 0;
  int row = 0;
  for (int bitgroup = 0; bitgroup < 2; ++bitgroup) {
    for (int q = 0; q < n_; ++q) {
      uint64_t bit = uint64_t{1} << q;
      auto get = [&](const PauliString& ps) {
        return bitgroup == 0 ? bool(ps.x & bit) : bool(ps.z & bit);
      };
      int pivot = -1;
      for (int r = row; r < s; ++r)
        if (get(rows[r])) { pivot = r; break; }
      if (pivot < 0) continue;
      std::swap(rows[row], rows[pivot]);
      std::swap(combo[row], combo[pivot]);
      for (int r = 0; r < s; ++r) {
        if (r != row && get(rows[r])) {
          rows[r] = rows[r].mul(rows[row]);
          combo[r] ^= combo[row];
        }
      }
      if (get(target)) {
        target = target.mul(rows[row]);
        target_combo ^= combo[row];
      }
      ++row;
    }
  }
  (void)target_combo;
  if (target.x != 0 || target.z != 0) return 0;  // pattern not in span
  // target now equals sign(p) * sign(combination)^-1 * I; a leftover negative
  // sign means -p is the group element.
  return target.negative ? -1 : +1;
}

Tableau Tableau::apply_projection(const PauliString& pauli, int outcome) const {
  if ((pauli.support() >> n_) != 0)
    throw std::out_of_range("projection register out of range");
  if (pauli.is_identity_pattern())
    throw std::invalid_argument("projection on identity Pauli");
  PauliString target = pauli;
  if (outcome < 0) target.negative = !target.negative;

  Tableau t = *this;
  if (t.weight_ == 0) return t;

  int anti = -1;
  for (size_t i = 0; i < t.generators_.size(); ++i) {
    if (!t.generators_[i].commutes_with(target)) { anti = static_cast<int>(i); break; }
  }
  if (anti >= 0) {
    for (size_t i = 0; i < t.generators_.size(); ++i) {
      if (static_cast<int>(i) != anti && !t.generators_[i].commutes_with(target))
        t.generators_[i] = t.generators_[i].mul(t.generators_[anti]);
    }
    t.generators_[anti] = target;
    t.weight_ /= 2;
    return t;
  }
  int m = signed_membership(target);
  if (m == +1) return t;  // projector acts as identity on the support
  if (m == -1) {
    t.weight_ = 0;
    return t;
  }
  // Commuting pattern outside the span: the projector halves the trace and
  // joins the group.
  t.generators_.push_back(target);
  t.weight_ /= 2;
  return t;
}

Tableau Tableau::apply_prep(int reg, char basis) const {
  if (reg < 0 || reg >= n_) throw std::out_of_range("prep register out of range");
  Tableau t = *this;
  uint64_t bit = uint64_t{1} << reg;

  // Row-reduce so that at most one generator carries an x bit at reg and at
  // most one other carries a z bit there; only those rows touch reg, and they
  // do not survive the partial trace.
  auto& gens = t.generators_;
  int xrow = -1;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].x & bit) {
      if (xrow < 0)
        xrow = static_cast<int>(i);
      else
        gens[i] = gens[i].mul(gens[xrow]);
    }
  }
  int zrow = -1;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (static_cast<int>(i) == xrow) continue;
    if (gens[i].z & bit) {
      if (zrow < 0)
        zrow = static_cast<int>(i);
      else
        gens[i] = gens[i].mul(gens[zrow]);
    }
  }
  std::vector<PauliString> kept;
  kept.reserve(gens.size() + 1);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (static_cast<int>(i) != xrow && static_cast<int>(i) != zrow)
      kept.push_back(gens[i]);
  }
  switch (basis) {
    case '0': kept.push_back(PauliString::single('Z', reg)); break;
    case '1': kept.push_back(PauliString::single('Z', reg, true)); break;
    case '+': kept.push_back(PauliString::single('X', reg)); break;
    case '-': kept.push_back(PauliString::single('X', reg, true)); break;
    default: throw std::invalid_argument("bad basis symbol");
  }
  t.generators_ = std::move(kept);
  return t;
}

Tableau Tableau::apply_replace_all(const PrepSpec& prep) const {
  if (prep.size() != n_)
    throw std::invalid_argument("replace_all prep has wrong register count");
  Tableau t = from_prep(prep);
  t.weight_ = weight_;
  return t;
}

Tableau Tableau::apply_step(const ProgramStep& step) const {
  if (const auto* p = std::get_if<PrepStep>(&step)) return apply_prep(p->reg, p->basis);
  if (const auto* g = std::get_if<GateStep>(&step)) return apply_gate(*g);
  if (const auto* pr = std::get_if<ProjectStep>(&step))
    return apply_projection(pr->pauli, pr->outcome);
  return apply_replace_all(std::get<ReplaceAllStep>(step).spec);
}

Tableau Tableau::apply_program(const Program& program) const {
  Tableau t = *this;
  for (const auto& step : program) {
    t = t.apply_step(step);
    if (t.weight_ == 0) break;  // annihilated; remaining steps cannot revive it
  }
  return t;
}

PauliCoefficients Tableau::reduce_to(const std::vector<int>& registers) const {
  PauliCoefficients out;
  out.width = static_cast<int>(registers.size());
  out.registers = registers;
  if (weight_ == 0) return out;

  uint64_t keep = 0;
  for (int r : registers) {
    if (r < 0 || r >= n_) throw std::out_of_range("interface register out of range");
    keep |= uint64_t{1} << r;
  }
  uint64_t outside = ~keep;

  // Kernel of the "bits outside the interface" map over GF(2): combinations
  // of generators supported entirely inside the interface.
  int s = static_cast<int>(generators_.size());
  std::vector<PauliString> rows = generators_;
  std::vector<uint64_t> combo(s);
  for (int i = 0; i < s; ++i) combo[i] = uint64_t{1} << i;
  int row = 0;
  for (int bitgroup = 0; bitgroup < 2; ++bitgroup) {
    for (int q = 0; q < n_; ++q) {
      uint64_t bit = uint64_t{1} << q;
      if (!(bit & outside)) continue;
      auto get = [&](const PauliString& ps) {
        return bitgroup == 0 ? bool(ps.x & bit) : bool(ps.z & bit);
      };
      int pivot = -1;
      for (int r = row; r < s; ++r)
        if (get(rows[r])) { pivot = r; break; }
      if (pivot < 0) continue;
      std::swap(rows[row], rows[pivot]);
      std::swap(combo[row], combo[pivot]);
      for (int r = row + 1; r < s; ++r)
        if (get(rows[r])) {
          rows[r] = rows[r].mul(rows[row]);
          combo[r] ^= combo[row];
        }
      ++row;
    }
  }
  // Rows past `row` are supported inside the interface and span the kernel.
  std::vector<PauliString> basis(rows.begin() + row, rows.end());
  int k = static_cast<int>(basis.size());

  // Local coordinate remap.
  std::vector<int> local(n_, -1);
  for (size_t i = 0; i < registers.size(); ++i) local[registers[i]] = static_cast<int>(i);

  Rational unit = weight_;
  for (int i = 0; i < out.width; ++i) unit /= 2;

  for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
    PauliString g = PauliString::identity();
    for (int i = 0; i < k; ++i)
      if (mask & (uint64_t{1} << i)) g = g.mul(basis[i]);
    PauliCoefficients::Pattern pat;
    for (int q = 0; q < n_; ++q) {
      uint64_t bit = uint64_t{1} << q;
      if (local[q] < 0) continue;
      uint64_t lbit = uint64_t{1} << local[q];
      if (g.x & bit) pat.x |= lbit;
      if (g.z & bit) pat.z |= lbit;
    }
    out.add(pat, g.negative ? -unit : unit);
  }
  return out;
}

PauliCoefficients Tableau::den_coefficients() const {
  std::vector<int> all(n_);
  for (int i = 0; i < n_; ++i) all[i] = i;
  return reduce_to(all);
}

bool Tableau::check_invariants() const {
  int s = static_cast<int>(generators_.size());
  if (s > n_) return false;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      if (!generators_[i].commutes_with(generators_[j])) return false;
  // GF(2) rank of the (x|z) rows must be s.
  std::vector<std::pair<uint64_t, uint64_t>> m;
  for (const auto& g : generators_) m.emplace_back(g.x, g.z);
  int rank = 0;
  for (int bitgroup = 0; bitgroup < 2; ++bitgroup) {
    for (int q = 0; q < n_; ++q) {
      uint64_t bit = uint64_t{1} << q;
      auto get = [&](const std::pair<uint64_t, uint64_t>& r) {
        return bitgroup == 0 ? bool(r.first & bit) : bool(r.second & bit);
      };
      int pivot = -1;
      for (int r = rank; r < s; ++r)
        if (get(m[r])) { pivot = r; break; }
      if (pivot < 0) continue;
      std::swap(m[rank], m[pivot]);
      for (int r = rank + 1; r < s; ++r)
        if (get(m[r])) {
          m[r].first ^= m[rank].first;
          m[r].second ^= m[rank].second;
        }
      ++rank;
    }
  }
  return rank == s;
}

}  // namespace opaqnet
