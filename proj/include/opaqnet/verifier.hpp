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

#include <deque>
#include <optional>

#include "opaqnet/dense.hpp"
#include "opaqnet/tableau.hpp"
#include "opaqnet/unfolding.hpp"

namespace opaqnet {

// Symbolic backends the targeted exploration can run on. The exact engine is
// the stabilizer tableau; the dense engine exists for oracle comparisons and
// for isolating the concurrency quotient in benchmarks.
struct TableauEngine {
  using State = Tableau;
  const NetModel* model;
  State init() const { return Tableau::from_prep(model->initial_state); }
  State apply(const State& s, const Branch& b) const {
    return s.apply_program(b.program);
  }
  bool positive(const State& s) const { return s.weight() > 0; }
};

struct DenseEngine {
  using State = DenseState;
  const NetModel* model;
  double cutoff = 1e-12;
  State init() const { return DenseState::from_prep(model->initial_state); }
  State apply(const State& s, const Branch& b) const {
    return s.apply_program(b.program);
  }
  bool positive(const State& s) const { return s.trace() > cutoff; }
};

template <typename State>
struct ExplorationResult {
  struct Node {
    Configuration config;
    State state;
    ObservationPomset obs;
    int parent = -1;
  };
  EventArena arena;
  std::vector<Node> nodes;              // reachable configurations in BFS order
  std::map<ConfigKey, int> reach_index; // V_reach
  std::set<ConfigKey> visited;          // V (includes pruned zero-weight keys)
  ExtensionOptions options;
};

// Phase 1 of the targeted exploration: BFS over configurations with
// canonical-key deduplication, evaluating each configuration's symbolic
// state exactly once and pruning zero-weight branches.
template <typename Engine>
ExplorationResult<typename Engine::State> explore(const NetModel& m,
                                                  const TargetFamily& fam,
                                                  const Engine& engine,
                                                  const ExtensionOptions& opts = {}) {
  using State = typename Engine::State;
  ExplorationResult<State> res;
  res.options = opts;

  Configuration root = Configuration::initial(m);
  State s0 = engine.init();
  res.visited.insert(root.events);
  if (!engine.positive(s0)) return res;
  ObservationPomset root_obs = obs_pomset(root, res.arena, m);
  res.reach_index[root.events] = 0;
  res.nodes.push_back({std::move(root), std::move(s0), std::move(root_obs), -1});

  std::deque<int> work;
  work.push_back(0);
  while (!work.empty()) {
    int idx = work.front();
    work.pop_front();
    Configuration c = res.nodes[idx].config;
    for (EventId e : extensions(c, fam, m, res.arena, opts)) {
      const Event& ev = res.arena[e];
      const Branch& b =
          m.transitions[ev.branch.transition].branches[ev.branch.branch];
      Configuration child = c.extended(m, res.arena, e, b.silent());
      if (!res.visited.insert(child.events).second) continue;
      State s = engine.apply(res.nodes[idx].state, b);
      if (!engine.positive(s)) continue;
      ObservationPomset obs = obs_pomset(child, res.arena, m);
      int cidx = static_cast<int>(res.nodes.size());
      res.reach_index[child.events] = cidx;
      res.nodes.push_back({std::move(child), std::move(s), std::move(obs), idx});
      work.push_back(cidx);
    }
  }
  return res;
}

// True iff the node's configuration admits no reachable silent extension
// (under the exploration's own options), i.e. it sits at the maximal
// unobservable reach.
template <typename State>
bool at_maximal_reach(ExplorationResult<State>& res, int node_index,
                      const TargetFamily& fam, const NetModel& m) {
  Configuration c = res.nodes[node_index].config;
  for (EventId e : extensions(c, fam, m, res.arena, res.options)) {
    const Event& ev = res.arena[e];
    const Branch& b = m.transitions[ev.branch.transition].branches[ev.branch.branch];
    if (!b.silent()) continue;
    Configuration child = c.extended(m, res.arena, e, true);
    if (res.reach_index.count(child.events)) return false;
  }
  return true;
}

using TableauExploration = ExplorationResult<Tableau>;
using DenseExploration = ExplorationResult<DenseState>;

// Unnormalized attacker posterior aggregate for one (observation, secret bit).
struct PosteriorAggregate {
  std::string obs_name;
  ObservationPomset obs;
  int secret_bit = 0;
  PauliCoefficients omega;  // exact expansion on the attacker interface
  Rational p = 0;           // = trace(omega)
  bool reachable = false;   // S flag: some maximal reachable member contributed
  std::optional<ConfigKey> witness;
  std::vector<std::pair<std::string, std::string>> witness_events;
};

// Phase 2: fold Reduce_A over the maximal unobservable reach of every target.
// Returns one aggregate per (target, b), in family order with b=0 first.
std::vector<PosteriorAggregate> aggregate(TableauExploration& res,
                                          const NetModel& m,
                                          const TargetFamily& fam);

struct LeakageValue {
  double value = 0;
  std::optional<ExactRadical> exact;  // present for |A| = 1 and degenerate cases

  std::string exact_string() const { return exact ? exact->str() : ""; }
};

// Posterior-state leakage between the b=0 and b=1 aggregates of one
// observation (three-case definition over the exact p values).
LeakageValue leakage(const PosteriorAggregate& a0, const PosteriorAggregate& a1);

// Trace distance between two normalized Pauli expansions on the same
// interface; exact Bloch form on one register, Hermitian eigenvalues beyond.
LeakageValue posterior_trace_distance(const PauliCoefficients& x,
                                      const PauliCoefficients& y);

// Max pairwise trace distance over per-configuration normalized views at the
// maximal reach (requires both sides nonempty).
double robust_upper_bound(TableauExploration& res, const NetModel& m,
                          const TargetFamily& fam, const CompiledTarget& target);

struct PerObservationReport {
  std::string name;
  bool s0 = false, s1 = false;
  Rational p0 = 0, p1 = 0;
  double leakage_value = 0;
  std::string leakage_exact;  // empty when unavailable
  std::optional<double> upper_bound;
  PauliCoefficients omega0, omega1;
  std::vector<std::pair<std::string, std::string>> witness0, witness1;
};

struct OpacityReport {
  bool structural_opaque = true;
  double epsilon = 0;
  bool epsilon_opaque = true;
  std::string worst_observation;
  double max_leakage = 0;
  std::vector<PerObservationReport> per_observation;
  std::vector<std::string> warnings;
};

inline constexpr double kEpsilonSlack = 1e-12;

OpacityReport build_report(const NetModel& m, const TargetFamily& fam,
                           double epsilon,
                           const std::vector<PosteriorAggregate>& aggregates,
                           TableauExploration* res_for_bounds = nullptr);

// One-stop verification: explore + aggregate + report.
OpacityReport report(const NetModel& m, const TargetFamily& fam, double epsilon,
                     const ExtensionOptions& opts = {});

// Report serialization (round-trips the fields check-cert needs).
std::string report_to_json(const OpacityReport& r, const std::string& model_hash,
                           int interface_width);
OpacityReport report_from_json(const std::string& text, int* interface_width);

// FNV-1a content hash, hex-encoded; embedded in reports for audit.
std::string content_hash(const std::string& bytes);

}  // namespace opaqnet
