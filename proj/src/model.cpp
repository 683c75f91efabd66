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

#include "opaqnet/model.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "json.hpp"
#include "opaqnet/dense.hpp"

namespace opaqnet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ModelError(message); }

std::string position_of(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& expect(const json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) fail(context + ": missing key '" + key + "'");
  return *it;
}

int lookup(const std::vector<std::string>& ids, const std::string& id) {
  for (size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  return -1;
}

int place_or_fail(const NetModel& m, const std::string& id, const std::string& ctx) {
  int idx = m.place_index(id);
  if (idx < 0) fail(ctx + ": unknown place '" + id + "'");
  return idx;
}

int register_or_fail(const NetModel& m, const std::string& id, const std::string& ctx) {
  int idx = m.register_index(id);
  if (idx < 0) fail(ctx + ": unknown register '" + id + "'");
  return idx;
}

char parse_basis(const std::string& b, const std::string& ctx) {
  if (b == "0") return '0';
  if (b == "1") return '1';
  if (b == "+") return '+';
  if (b == "-") return '-';
  fail(ctx + ": bad basis '" + b + "' (expected 0, 1, + or -)");
}

GateStep parse_gate(const json& j, const NetModel& m, const std::string& ctx) {
  GateStep g;
  g.kind = gate_kind_from_name(expect(j, "name", ctx).get<std::string>());
  auto regs = expect(j, "regs", ctx).get<std::vector<std::string>>();
  bool two = g.kind == GateKind::CNOT || g.kind == GateKind::CZ;
  if (regs.size() != (two ? 2u : 1u))
    fail(ctx + ": gate " + gate_name(g.kind) + " expects " + (two ? "2" : "1") +
         " register(s)");
  g.q0 = register_or_fail(m, regs[0], ctx);
  if (two) {
    g.q1 = register_or_fail(m, regs[1], ctx);
    if (g.q1 == g.q0) fail(ctx + ": gate operands must be distinct");
  }
  return g;
}

PrepSpec parse_prep_spec(const json& j, const NetModel& m, const std::string& ctx) {
  PrepSpec prep;
  prep.basis.assign(m.registers.size(), '0');
  std::vector<bool> seen(m.registers.size(), false);
  const json& assign = expect(j, "assign", ctx);
  for (auto it = assign.begin(); it != assign.end(); ++it) {
    int idx = register_or_fail(m, it.key(), ctx);
    prep.basis[idx] = parse_basis(it.value().get<std::string>(), ctx);
    seen[idx] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(ctx + ": prep does not assign register '" + m.registers[i] + "'");
  if (j.contains("entangle"))
    for (const auto& gj : j.at("entangle")) prep.entangle.push_back(parse_gate(gj, m, ctx));
  return prep;
}

ProgramStep parse_step(const json& j, const NetModel& m, const std::string& ctx) {
  if (j.contains("prep")) {
    const json& p = j.at("prep");
    PrepStep step;
    step.reg = register_or_fail(m, expect(p, "reg", ctx).get<std::string>(), ctx);
    step.basis = parse_basis(expect(p, "basis", ctx).get<std::string>(), ctx);
    return step;
  }
  if (j.contains("gate")) return parse_gate(j.at("gate"), m, ctx);
  if (j.contains("project")) {
    const json& p = j.at("project");
    std::string letters = expect(p, "pauli", ctx).get<std::string>();
    auto regs = expect(p, "regs", ctx).get<std::vector<std::string>>();
    if (letters.size() != regs.size())
      fail(ctx + ": pauli string length must match register list");
    ProjectStep step;
    for (size_t i = 0; i < regs.size(); ++i) {
      int q = register_or_fail(m, regs[i], ctx);
      PauliString f = PauliString::single(letters[i], q);
      if (f.is_identity_pattern() && letters[i] != 'I')
        fail(ctx + ": bad pauli letter");
      if ((step.pauli.support() & f.support()) != 0)
        fail(ctx + ": duplicate register in projection");
      step.pauli.x |= f.x;
      step.pauli.z |= f.z;
    }
    if (step.pauli.is_identity_pattern()) fail(ctx + ": projection on identity");
    int outcome = expect(p, "outcome", ctx).get<int>();
    if (outcome != 1 && outcome != -1) fail(ctx + ": outcome must be +1 or -1");
    step.outcome = outcome;
    return step;
  }
  if (j.contains("replace_all"))
    return ReplaceAllStep{parse_prep_spec(j.at("replace_all"), m, ctx)};
  fail(ctx + ": program step must be one of prep/gate/project/replace_all");
}

Marking parse_place_set(const json& j, const NetModel& m, const std::string& ctx) {
  Marking mask = 0;
  for (const auto& id : j.get<std::vector<std::string>>())
    mask |= Marking{1} << place_or_fail(m, id, ctx);
  return mask;
}

TargetSpec parse_target(const json& j, int ordinal) {
  TargetSpec t;
  if (j.is_array()) {
    // A plain label list is shorthand for a chain.
    return TargetSpec::chain("target_" + std::to_string(ordinal),
                             j.get<std::vector<std::string>>());
  }
  t.name = j.value("id", "target_" + std::to_string(ordinal));
  std::vector<std::string> node_ids;
  for (const auto& nj : expect(j, "nodes", "target " + t.name)) {
    node_ids.push_back(expect(nj, "id", "target node").get<std::string>());
    t.labels.push_back(expect(nj, "label", "target node").get<std::string>());
  }
  if (j.contains("order")) {
    for (const auto& pj : j.at("order")) {
      auto pair = pj.get<std::vector<std::string>>();
      if (pair.size() != 2) fail("target " + t.name + ": order entries are pairs");
      int a = lookup(node_ids, pair[0]);
      int b = lookup(node_ids, pair[1]);
      if (a < 0 || b < 0) fail("target " + t.name + ": unknown node in order pair");
      t.order.emplace_back(a, b);
    }
  }
  return t;
}

json prep_to_json(const PrepSpec& prep, const NetModel& m) {
  json assign = json::object();
  for (size_t q = 0; q < prep.basis.size(); ++q)
    assign[m.registers[q]] = std::string(1, prep.basis[q]);
  json out;
  out["assign"] = assign;
  if (!prep.entangle.empty()) {
    json ent = json::array();
    for (const auto& g : prep.entangle) {
      json gj;
      gj["name"] = gate_name(g.kind);
      json regs = json::array({m.registers[g.q0]});
      if (g.q1 >= 0) regs.push_back(m.registers[g.q1]);
      gj["regs"] = regs;
      ent.push_back(gj);
    }
    out["entangle"] = ent;
  }
  return out;
}

std::vector<std::string> mask_to_places(const NetModel& m, Marking mask) {
  std::vector<std::string> out;
  for (int i = 0; i < m.num_places(); ++i)
    if (mask & (Marking{1} << i)) out.push_back(m.places[i]);
  return out;
}

}  // namespace

TargetSpec TargetSpec::chain(const std::string& name,
                             const std::vector<std::string>& labels) {
  TargetSpec t;
  t.name = name;
  t.labels = labels;
  for (size_t i = 0; i + 1 < labels.size(); ++i)
    t.order.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return t;
}

Rational CostModel::disable_cost(const std::string& transition) const {
  for (const auto& [id, price] : disable_price)
    if (id == transition) return price;
  return default_disable;
}

Rational CostModel::mask_unit_cost(const std::string& mask_id) const {
  for (const auto& [id, price] : mask_price)
    if (id == mask_id) return price;
  return default_mask;
}

int NetModel::place_index(const std::string& id) const { return lookup(places, id); }
int NetModel::register_index(const std::string& id) const { return lookup(registers, id); }

int NetModel::transition_index(const std::string& id) const {
  for (size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].id == id) return static_cast<int>(i);
  return -1;
}

bool NetModel::marking_secret(Marking m) const {
  if (secret.mode != SecretSpec::Mode::MarkingSet) return false;
  for (Marking s : secret.markings)
    if (s == m) return true;
  return false;
}

std::string NetModel::marking_to_string(Marking m) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < num_places(); ++i) {
    if (m & (Marking{1} << i)) {
      if (!first) out += ",";
      out += places[i];
      first = false;
    }
  }
  return out + "}";
}

NetModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("syntax error at " + position_of(text, e.byte ? e.byte - 1 : 0) + ": " +
         e.what());
  }

  NetModel m;
  for (const auto& pj : expect(j, "control_places", "model")) {
    std::string id = pj.get<std::string>();
    if (lookup(m.places, id) >= 0) fail("duplicate place id '" + id + "'");
    m.places.push_back(id);
  }
  for (const auto& rj : expect(j, "quantum_registers", "model")) {
    std::string id;
    if (rj.is_string()) {
      id = rj.get<std::string>();
    } else {
      id = expect(rj, "id", "register").get<std::string>();
      if (rj.contains("dim") && rj.at("dim").get<int>() != 2)
        fail("register '" + id + "': only qubit registers (dim 2) are supported");
    }
    if (lookup(m.registers, id) >= 0 || lookup(m.places, id) >= 0)
      fail("duplicate id '" + id + "'");
    m.registers.push_back(id);
  }
  if (m.places.size() > 64) fail("model has more than 64 places");
  if (m.registers.size() > 64) fail("model has more than 64 registers");

  std::set<std::string> transition_ids;
  for (const auto& tj : expect(j, "transitions", "model")) {
    Transition t;
    t.id = expect(tj, "id", "transition").get<std::string>();
    std::string ctx = "transition " + t.id;
    if (!transition_ids.insert(t.id).second)
      fail("duplicate transition id '" + t.id + "'");
    t.preset = parse_place_set(expect(tj, "pre", ctx), m, ctx);
    t.postset = parse_place_set(expect(tj, "post", ctx), m, ctx);
    if (tj.contains("access"))
      for (const auto& rj : tj.at("access"))
        t.access |= uint64_t{1} << register_or_fail(m, rj.get<std::string>(), ctx);
    t.controllable = tj.value("controllable", false);
    t.masking = tj.value("masking", false);
    t.evaluation_cut = tj.value("evaluation_cut", false);
    const json& branches = expect(tj, "branches", ctx);
    if (branches.empty()) fail(ctx + ": transition needs at least one branch");
    for (const auto& bj : branches) {
      Branch b;
      b.outcome = expect(bj, "outcome", ctx).get<std::string>();
      b.label = expect(bj, "label", ctx).get<std::string>();
      if (bj.contains("program"))
        for (const auto& sj : bj.at("program"))
          b.program.push_back(parse_step(sj, m, ctx + " branch " + b.outcome));
      t.branches.push_back(std::move(b));
    }
    m.transitions.push_back(std::move(t));
  }

  m.initial_marking =
      parse_place_set(expect(j, "initial_marking", "model"), m, "initial_marking");
  m.initial_state =
      parse_prep_spec(expect(j, "initial_state", "model"), m, "initial_state");
  for (const auto& rj : expect(j, "attacker_interface", "model"))
    m.attacker_interface.push_back(
        register_or_fail(m, rj.get<std::string>(), "attacker_interface"));
  std::sort(m.attacker_interface.begin(), m.attacker_interface.end());

  const json& sj = expect(j, "secret", "model");
  std::string mode = expect(sj, "mode", "secret").get<std::string>();
  if (mode == "marking-set") {
    m.secret.mode = SecretSpec::Mode::MarkingSet;
    for (const auto& mj : expect(sj, "markings", "secret"))
      m.secret.markings.push_back(parse_place_set(mj, m, "secret marking"));
  } else if (mode == "event-predicate") {
    m.secret.mode = SecretSpec::Mode::EventPredicate;
    for (const auto& tj : expect(sj, "transitions", "secret")) {
      int idx = m.transition_index(tj.get<std::string>());
      if (idx < 0) fail("secret: unknown transition '" + tj.get<std::string>() + "'");
      m.secret.transitions.push_back(idx);
    }
  } else {
    fail("secret: mode must be 'marking-set' or 'event-predicate'");
  }

  for (const auto& aj : expect(j, "observable_alphabet", "model")) {
    std::string label = aj.get<std::string>();
    if (label == kTauLabel) fail("observable_alphabet must not contain 'tau'");
    m.observable_alphabet.push_back(label);
  }

  if (j.contains("targets")) {
    int ordinal = 0;
    for (const auto& tj : j.at("targets"))
      m.targets.push_back(parse_target(tj, ordinal++));
  }

  if (j.contains("architecture")) {
    const json& arch = j.at("architecture");
    ArchitectureSpec a;
    if (arch.contains("masking_catalog")) {
      for (const auto& cj : arch.at("masking_catalog")) {
        MaskingCatalogEntry entry;
        entry.id = expect(cj, "id", "masking catalog").get<std::string>();
        for (const auto& rj : expect(cj, "targets", "masking catalog"))
          entry.targets.push_back(
              register_or_fail(m, rj.get<std::string>(), "masking catalog"));
        std::sort(entry.targets.begin(), entry.targets.end());
        std::string kind = expect(cj, "kind", "masking catalog").get<std::string>();
        if (kind == "depolarize")
          entry.kind = MaskingCatalogEntry::Kind::Depolarize;
        else if (kind == "twirl")
          entry.kind = MaskingCatalogEntry::Kind::Twirl;
        else
          fail("masking catalog: kind must be 'depolarize' or 'twirl'");
        a.catalog.push_back(std::move(entry));
      }
    }
    if (arch.contains("admissibility")) {
      const json& adm = arch.at("admissibility");
      if (adm.contains("required_observations"))
        a.admissibility.required_observations =
            adm.at("required_observations").get<std::vector<std::string>>();
      a.admissibility.forbid_deadlock = adm.value("forbid_deadlock", false);
      if (adm.contains("completion_place"))
        a.admissibility.completion_place = place_or_fail(
            m, adm.at("completion_place").get<std::string>(), "admissibility");
    }
    if (arch.contains("cost")) {
      const json& cost = arch.at("cost");
      if (cost.contains("default_disable"))
        a.cost.default_disable =
            rational_from_string(cost.at("default_disable").get<std::string>());
      if (cost.contains("default_mask"))
        a.cost.default_mask =
            rational_from_string(cost.at("default_mask").get<std::string>());
      if (cost.contains("disable"))
        for (auto it = cost.at("disable").begin(); it != cost.at("disable").end(); ++it)
          a.cost.disable_price.emplace_back(
              it.key(), rational_from_string(it.value().get<std::string>()));
      if (cost.contains("mask"))
        for (auto it = cost.at("mask").begin(); it != cost.at("mask").end(); ++it)
          a.cost.mask_price.emplace_back(
              it.key(), rational_from_string(it.value().get<std::string>()));
    }
    m.architecture = std::move(a);
  }
  return m;
}

std::string serialize_model(const NetModel& m) {
  json j;
  j["control_places"] = m.places;
  j["quantum_registers"] = m.registers;
  json transitions = json::array();
  for (const auto& t : m.transitions) {
    json tj;
    tj["id"] = t.id;
    tj["pre"] = mask_to_places(m, t.preset);
    tj["post"] = mask_to_places(m, t.postset);
    json access = json::array();
    for (int q = 0; q < m.num_registers(); ++q)
      if (t.access & (uint64_t{1} << q)) access.push_back(m.registers[q]);
    tj["access"] = access;
    tj["controllable"] = t.controllable;
    tj["masking"] = t.masking;
    if (t.evaluation_cut) tj["evaluation_cut"] = true;
    json branches = json::array();
    for (const auto& b : t.branches) {
      json bj;
      bj["outcome"] = b.outcome;
      bj["label"] = b.label;
      json program = json::array();
      for (const auto& step : b.program) {
        json sj;
        if (const auto* p = std::get_if<PrepStep>(&step)) {
          sj["prep"] = {{"reg", m.registers[p->reg]},
                        {"basis", std::string(1, p->basis)}};
        } else if (const auto* g = std::get_if<GateStep>(&step)) {
          json regs = json::array({m.registers[g->q0]});
          if (g->q1 >= 0) regs.push_back(m.registers[g->q1]);
          sj["gate"] = {{"name", gate_name(g->kind)}, {"regs", regs}};
        } else if (const auto* pr = std::get_if<ProjectStep>(&step)) {
          std::string letters;
          json regs = json::array();
          for (int q = 0; q < m.num_registers(); ++q) {
            char axis = pr->pauli.axis_at(q);
            if (axis != 'I') {
              letters.push_back(axis);
              regs.push_back(m.registers[q]);
            }
          }
          sj["project"] = {
              {"pauli", letters}, {"regs", regs}, {"outcome", pr->outcome}};
        } else {
          sj["replace_all"] = prep_to_json(std::get<ReplaceAllStep>(step).spec, m);
        }
        program.push_back(sj);
      }
      bj["program"] = program;
      branches.push_back(bj);
    }
    tj["branches"] = branches;
    transitions.push_back(tj);
  }
  j["transitions"] = transitions;
  j["initial_marking"] = mask_to_places(m, m.initial_marking);
  j["initial_state"] = prep_to_json(m.initial_state, m);
  json iface = json::array();
  for (int q : m.attacker_interface) iface.push_back(m.registers[q]);
  j["attacker_interface"] = iface;
  json sj;
  if (m.secret.mode == SecretSpec::Mode::MarkingSet) {
    sj["mode"] = "marking-set";
    json markings = json::array();
    for (Marking mk : m.secret.markings) markings.push_back(mask_to_places(m, mk));
    sj["markings"] = markings;
  } else {
    sj["mode"] = "event-predicate";
    json ids = json::array();
    for (int t : m.secret.transitions) ids.push_back(m.transitions[t].id);
    sj["transitions"] = ids;
  }
  j["secret"] = sj;
  j["observable_alphabet"] = m.observable_alphabet;
  if (!m.targets.empty()) {
    json targets = json::array();
    for (const auto& t : m.targets) {
      json tj;
      tj["id"] = t.name;
      json nodes = json::array();
      for (size_t i = 0; i < t.labels.size(); ++i)
        nodes.push_back({{"id", "n" + std::to_string(i)}, {"label", t.labels[i]}});
      tj["nodes"] = nodes;
      json order = json::array();
      for (const auto& [a, b] : t.order)
        order.push_back({"n" + std::to_string(a), "n" + std::to_string(b)});
      tj["order"] = order;
      targets.push_back(tj);
    }
    j["targets"] = targets;
  }
  if (m.architecture) {
    const auto& a = *m.architecture;
    json arch;
    json catalog = json::array();
    for (const auto& e : a.catalog) {
      json ej;
      ej["id"] = e.id;
      json regs = json::array();
      for (int q : e.targets) regs.push_back(m.registers[q]);
      ej["targets"] = regs;
      ej["kind"] =
          e.kind == MaskingCatalogEntry::Kind::Depolarize ? "depolarize" : "twirl";
      catalog.push_back(ej);
    }
    arch["masking_catalog"] = catalog;
    json adm;
    adm["required_observations"] = a.admissibility.required_observations;
    adm["forbid_deadlock"] = a.admissibility.forbid_deadlock;
    if (a.admissibility.completion_place >= 0)
      adm["completion_place"] = m.places[a.admissibility.completion_place];
    arch["admissibility"] = adm;
    json cost;
    cost["default_disable"] = rational_to_string(a.cost.default_disable);
    cost["default_mask"] = rational_to_string(a.cost.default_mask);
    json disable = json::object();
    for (const auto& [id, price] : a.cost.disable_price)
      disable[id] = rational_to_string(price);
    if (!disable.empty()) cost["disable"] = disable;
    json maskp = json::object();
    for (const auto& [id, price] : a.cost.mask_price)
      maskp[id] = rational_to_string(price);
    if (!maskp.empty()) cost["mask"] = maskp;
    arch["cost"] = cost;
    j["architecture"] = arch;
  }
  return j.dump(2) + "\n";
}

namespace {

// Trace preservation of the summed instrument on the dense backend: the dual
// of the total map must fix the identity.
bool instrument_trace_preserving(const NetModel& m, const Transition& t) {
  int n = m.num_registers();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : t.branches) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    // Fold adjoints right-to-left: Phi*(I) = S1*(S2*(...Sk*(I))).
    for (auto it = b.program.rbegin(); it != b.program.rend(); ++it) {
      if (const auto* g = std::get_if<GateStep>(&*it)) {
        Eigen::MatrixXcd u = gate_matrix(*g, n);
        acc = u.adjoint() * acc * u;
      } else if (const auto* pr = std::get_if<ProjectStep>(&*it)) {
        Eigen::MatrixXcd pm = pauli_matrix(pr->pauli, n);
        Eigen::MatrixXcd proj =
            0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + double(pr->outcome) * pm);
        acc = proj * acc * proj;
      } else if (const auto* p = std::get_if<PrepStep>(&*it)) {
        // Adjoint of the one-register reset channel.
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim, dim);
        const double s = 1.0 / std::sqrt(2.0);
        std::complex<double> v0, v1;
        switch (p->basis) {
          case '0': v0 = 1; v1 = 0; break;
          case '1': v0 = 0; v1 = 1; break;
          case '+': v0 = s; v1 = s; break;
          default: v0 = s; v1 = -s; break;
        }
        const Eigen::Index bit = Eigen::Index{1} << p->reg;
        for (int bb = 0; bb < 2; ++bb) {
          Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            if (i & bit) continue;
            Eigen::Index src = i | (bb ? bit : 0);
            k(i, src) += v0;
            k(i | bit, src) += v1;
          }
          next += k.adjoint() * acc * k;
        }
        acc = next;
      } else {
        const auto& rep = std::get<ReplaceAllStep>(*it);
        DenseState fresh = DenseState::from_prep(rep.spec);
        std::complex<double> scalar = (fresh.rho * acc).trace();
        acc = scalar * Eigen::MatrixXcd::Identity(dim, dim);
      }
    }
    total += acc;
  }
  return (total - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-9;
}

}  // namespace

std::vector<Diagnostic> validate_model(const NetModel& m) {
  std::vector<Diagnostic> diags;
  auto error = [&](const std::string& invariant, const std::string& subject,
                   const std::string& message) {
    diags.push_back({Diagnostic::Severity::Error, invariant, subject, message});
  };
  auto warning = [&](const std::string& invariant, const std::string& subject,
                     const std::string& message) {
    diags.push_back({Diagnostic::Severity::Warning, invariant, subject, message});
  };

  uint64_t all_registers = m.num_registers() >= 64
                               ? ~uint64_t{0}
                               : (uint64_t{1} << m.num_registers()) - 1;
  std::set<std::string> alphabet(m.observable_alphabet.begin(),
                                 m.observable_alphabet.end());
  for (const auto& t : m.transitions) {
    std::set<std::string> outcomes;
    bool all_tau = true;
    for (const auto& b : t.branches) {
      if (!outcomes.insert(b.outcome).second)
        error("distinct outcomes", t.id, "duplicate outcome id '" + b.outcome + "'");
      if (!b.silent()) {
        all_tau = false;
        if (!alphabet.count(b.label))
          error("label alphabet", t.id,
                "branch label '" + b.label + "' is not in the observable alphabet");
      }
      uint64_t support = program_support(b.program);
      if (support == ~uint64_t{0}) {
        // replace_all: global access required
        if (t.access != all_registers)
          error("access violation", t.id,
                "branch '" + b.outcome + "' uses replace_all without full access");
      } else if ((support & ~t.access) != 0) {
        error("access violation", t.id,
              "branch '" + b.outcome + "' touches registers outside Acc(t)");
      }
    }
    if (t.masking && !all_tau)
      error("masking must be invisible", t.id,
            "masking transition has an observable-labeled branch");
  }

  // Instrument completeness, decided by the dense oracle on small models.
  if (m.num_registers() <= 6) {
    for (const auto& t : m.transitions) {
      if (!instrument_trace_preserving(m, t))
        error("instrument completeness", t.id,
              "branch maps do not sum to a trace-preserving channel");
    }
  } else {
    warning("instrument completeness", "",
            "more than 6 registers; channel completeness not oracle-checked");
  }
  return diags;
}

bool enabled(Marking m, const Transition& t) {
  if ((t.preset & m) != t.preset) return false;
  return ((m & ~t.preset) & t.postset) == 0;
}

Marking fire(Marking m, const Transition& t) {
  if (!enabled(m, t)) throw NotEnabledError("transition " + t.id + " is not enabled");
  return (m & ~t.preset) | t.postset;
}

bool structurally_independent(const Transition& t1, const Transition& t2) {
  if (&t1 == &t2 || t1.id == t2.id)
    throw std::invalid_argument("structural independence needs distinct transitions");
  if (((t1.preset | t1.postset) & (t2.preset | t2.postset)) != 0) return false;
  return (t1.access & t2.access) == 0;
}

}  // namespace opaqnet
