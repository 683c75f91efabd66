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

#include "opaqnet/unfolding.hpp"

#include <algorithm>

namespace opaqnet {

std::vector<BranchRef> branch_expand(const NetModel& m) {
  std::vector<BranchRef> out;
  for (size_t t = 0; t < m.transitions.size(); ++t)
    for (size_t r = 0; r < m.transitions[t].branches.size(); ++r)
      out.push_back({static_cast<int>(t), static_cast<int>(r)});
  return out;
}

EventId EventArena::intern(const BranchRef& branch,
                           std::vector<std::pair<int, EventId>> provenance) {
  std::sort(provenance.begin(), provenance.end());
  auto key = std::make_tuple(branch.transition, branch.branch, provenance);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  Event e;
  e.branch = branch;
  e.provenance = std::move(provenance);
  for (const auto& [place, producer] : e.provenance) {
    if (producer == kInitialToken) continue;
    e.causes.push_back(producer);
    e.depth = std::max(e.depth, events_[producer].depth + 1);
  }
  std::sort(e.causes.begin(), e.causes.end());
  e.causes.erase(std::unique(e.causes.begin(), e.causes.end()), e.causes.end());
  EventId id = static_cast<EventId>(events_.size());
  events_.push_back(std::move(e));
  index_.emplace(std::move(key), id);
  return id;
}

Configuration Configuration::initial(const NetModel& m) {
  Configuration c;
  c.marking = m.initial_marking;
  for (int p = 0; p < m.num_places(); ++p)
    if (m.initial_marking & (Marking{1} << p))
      c.token_producer.emplace_back(p, kInitialToken);
  return c;
}

bool Configuration::contains(EventId e) const {
  return std::binary_search(events.begin(), events.end(), e);
}

Configuration Configuration::extended(const NetModel& m, const EventArena& arena,
                                      EventId e, bool silent) const {
  const Event& ev = arena[e];
  const Transition& t = m.transitions[ev.branch.transition];
  Configuration out;
  out.events = events;
  out.events.insert(std::lower_bound(out.events.begin(), out.events.end(), e), e);
  out.marking = fire(marking, t);
  out.token_producer.reserve(token_producer.size());
  for (const auto& [place, producer] : token_producer)
    if (!(t.preset & (Marking{1} << place)))
      out.token_producer.emplace_back(place, producer);
  for (int p = 0; p < m.num_places(); ++p)
    if (t.postset & (Marking{1} << p)) out.token_producer.emplace_back(p, e);
  std::sort(out.token_producer.begin(), out.token_producer.end());
  out.tau_streak = silent ? tau_streak + 1 : 0;
  return out;
}

std::vector<EventId> extensions(const Configuration& c, const TargetFamily& fam,
                                const NetModel& m, EventArena& arena,
                                const ExtensionOptions& opts) {
  // candidates sorted by (transition id, outcome id)
  std::vector<std::pair<std::pair<std::string, std::string>, EventId>> found;
  bool base_ok = fam.is_prefix(obs_pomset(c, arena, m));
  for (size_t ti = 0; ti < m.transitions.size(); ++ti) {
    const Transition& t = m.transitions[ti];
    if (!enabled(c.marking, t)) continue;
    if (opts.respect_evaluation_cut && t.evaluation_cut) continue;
    if (opts.disabled_transitions &&
        opts.disabled_transitions->count(static_cast<int>(ti)))
      continue;
    std::vector<std::pair<int, EventId>> provenance;
    for (const auto& [place, producer] : c.token_producer)
      if (t.preset & (Marking{1} << place)) provenance.emplace_back(place, producer);
    for (size_t r = 0; r < t.branches.size(); ++r) {
      const Branch& b = t.branches[r];
      EventId e = arena.intern({static_cast<int>(ti), static_cast<int>(r)},
                               provenance);
      if (c.contains(e)) continue;
      if (b.silent()) {
        // silent extensions keep the observation pomset unchanged
        if (!base_ok) continue;
        if (c.tau_streak + 1 > opts.tau_bound)
          throw DivergenceError(
              "silent-chain bound exceeded at transition " + t.id +
              " (divergence guard, bound " + std::to_string(opts.tau_bound) + ")");
      } else {
        Configuration ext = c.extended(m, arena, e, false);
        if (!fam.is_prefix(obs_pomset(ext, arena, m))) continue;
      }
      found.push_back({{t.id, b.outcome}, e});
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<EventId> out;
  out.reserve(found.size());
  for (auto& [key, e] : found) out.push_back(e);
  return out;
}

LabeledPoset causal_poset(const Configuration& c, const EventArena& arena,
                          const NetModel& m) {
  int n = static_cast<int>(c.events.size());
  std::map<EventId, int> pos;
  for (int i = 0; i < n; ++i) pos[c.events[i]] = i;

  LabeledPoset poset;
  for (EventId e : c.events) {
    const Event& ev = arena[e];
    poset.add_node(m.transitions[ev.branch.transition].branches[ev.branch.branch].label);
  }
  for (int i = 0; i < n; ++i) {
    const Event& ev = arena[c.events[i]];
    for (EventId cause : ev.causes) {
      auto it = pos.find(cause);
      if (it == pos.end())
        throw std::logic_error("configuration is not causally closed");
      poset.add_less(it->second, i);
    }
  }
  poset.close();
  return poset;
}

ObservationPomset obs_pomset(const Configuration& c, const EventArena& arena,
                             const NetModel& m) {
  LabeledPoset full = causal_poset(c, arena, m);
  std::vector<int> observable;
  for (int i = 0; i < full.size(); ++i)
    if (full.labels[i] != kTauLabel) observable.push_back(i);
  return ObservationPomset::canonicalize(full.restrict_to(observable));
}

Marking config_marking(const Configuration& c, const EventArena& arena,
                       const NetModel& m) {
  // Events sorted by (depth, id) always list causes first.
  std::vector<EventId> order = c.events;
  std::sort(order.begin(), order.end(), [&](EventId a, EventId b) {
    if (arena[a].depth != arena[b].depth) return arena[a].depth < arena[b].depth;
    return a < b;
  });
  Marking mk = m.initial_marking;
  for (EventId e : order) mk = fire(mk, m.transitions[arena[e].branch.transition]);
  return mk;
}

std::vector<std::vector<EventId>> linearizations(const Configuration& c,
                                                 const EventArena& arena,
                                                 const NetModel& m, int bound) {
  LabeledPoset poset = causal_poset(c, arena, m);
  std::vector<std::vector<int>> orders = poset_linearizations(poset, bound);
  std::vector<std::vector<EventId>> out;
  out.reserve(orders.size());
  for (const auto& order : orders) {
    std::vector<EventId> seq;
    seq.reserve(order.size());
    for (int i : order) seq.push_back(c.events[i]);
    out.push_back(std::move(seq));
  }
  return out;
}

bool config_secret(const Configuration& c, const EventArena& arena,
                   const NetModel& m) {
  if (m.secret.mode == SecretSpec::Mode::EventPredicate) {
    for (EventId e : c.events)
      for (int t : m.secret.transitions)
        if (arena[e].branch.transition == t) return true;
    return false;
  }
  return m.marking_secret(c.marking);
}

bool configurations_conflict(const Configuration& a, const Configuration& b,
                             const EventArena& arena) {
  // Conflict shows up as two distinct events consuming the same token.
  std::map<std::pair<int, EventId>, EventId> consumed;
  auto scan = [&](const Configuration& c) {
    for (EventId e : c.events)
      for (const auto& token : arena[e].provenance) {
        auto [it, inserted] = consumed.emplace(token, e);
        if (!inserted && it->second != e) return true;
      }
    return false;
  };
  if (scan(a)) return true;
  return scan(b);
}

}  // namespace opaqnet
