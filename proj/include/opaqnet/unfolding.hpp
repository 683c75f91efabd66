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

#include <map>
#include <set>
#include <vector>

#include "opaqnet/model.hpp"
#include "opaqnet/pomset.hpp"

namespace opaqnet {

class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& message)
      : std::runtime_error(message) {}
};

using EventId = int32_t;
inline constexpr EventId kInitialToken = -1;

struct BranchRef {
  int transition = 0;
  int branch = 0;
  bool operator==(const BranchRef&) const = default;
};

// Branch expansion of the control net: one branch transition per (t, r),
// sharing t's preset and postset.
std::vector<BranchRef> branch_expand(const NetModel& m);

// One event of the branch-expanded unfolding. Causality and conflict are
// derived from consumed-token provenance: for each preset place the event
// records which event produced the consumed token (kInitialToken for tokens
// of the initial marking).
struct Event {
  BranchRef branch;
  std::vector<std::pair<int, EventId>> provenance;  // sorted by place index
  std::vector<EventId> causes;                      // distinct producers, sorted
  int depth = 1;  // 1 + max cause depth; causes always precede in id order
};

// Global interning arena; events are identified structurally, so a
// configuration is exactly its sorted event-id set.
class EventArena {
 public:
  EventId intern(const BranchRef& branch,
                 std::vector<std::pair<int, EventId>> provenance);
  const Event& operator[](EventId id) const { return events_[id]; }
  size_t size() const { return events_.size(); }

 private:
  std::vector<Event> events_;
  std::map<std::tuple<int, int, std::vector<std::pair<int, EventId>>>, EventId>
      index_;
};

using ConfigKey = std::vector<EventId>;  // sorted ascending

// Causally closed, conflict-free event set plus its run-time bookkeeping:
// the reached marking and the producing event of every live token.
struct Configuration {
  ConfigKey events;
  Marking marking = 0;
  std::vector<std::pair<int, EventId>> token_producer;  // sorted by place
  int tau_streak = 0;

  static Configuration initial(const NetModel& m);
  bool contains(EventId e) const;
  // Extends by one event; the caller guarantees enabledness.
  Configuration extended(const NetModel& m, const EventArena& arena, EventId e,
                         bool silent) const;
};

struct ExtensionOptions {
  bool respect_evaluation_cut = true;
  const std::set<int>* disabled_transitions = nullptr;  // closed-loop delta
  int tau_bound = 10000;
};

// Valid target-consistent extension events of c, in (transition id, outcome
// id) order. Throws DivergenceError when a silent chain exceeds the bound.
std::vector<EventId> extensions(const Configuration& c, const TargetFamily& fam,
                                const NetModel& m, EventArena& arena,
                                const ExtensionOptions& opts = {});

// Labeled causal order of the configuration restricted to observable events.
ObservationPomset obs_pomset(const Configuration& c, const EventArena& arena,
                             const NetModel& m);

// Full causal order over all events of c (indices into c.events).
LabeledPoset causal_poset(const Configuration& c, const EventArena& arena,
                          const NetModel& m);

// Marking reached by c: fold of fire along a linearization.
Marking config_marking(const Configuration& c, const EventArena& arena,
                       const NetModel& m);

// All linearizations of c as event-id sequences (default bound 12 events).
std::vector<std::vector<EventId>> linearizations(const Configuration& c,
                                                 const EventArena& arena,
                                                 const NetModel& m,
                                                 int bound = 12);

// Secrecy bit of a configuration: marking membership or event predicate,
// per the model's secret mode.
bool config_secret(const Configuration& c, const EventArena& arena,
                   const NetModel& m);

// True iff the two configurations contain conflicting events (some token is
// consumed by two distinct events across them).
bool configurations_conflict(const Configuration& a, const Configuration& b,
                             const EventArena& arena);

}  // namespace opaqnet
