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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opaqnet/model.hpp"

namespace opaqnet {

// Finite labeled strict partial order. `less` holds the transitive closure;
// callers may hand in any generating relation and call close().
struct LabeledPoset {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> less;

  int size() const { return static_cast<int>(labels.size()); }
  static LabeledPoset empty() { return {}; }
  static LabeledPoset from_spec(const TargetSpec& spec);

  void add_node(const std::string& label);
  void add_less(int a, int b) { less[a][b] = true; }
  void close();  // transitive closure (Floyd-Warshall style)
  bool is_strict_order() const;

  LabeledPoset restrict_to(const std::vector<int>& nodes) const;
  std::vector<int> downward_closure(uint64_t node_mask) const;  // unused bits ignored
};

// Isomorphism-class representative of a labeled poset: a deterministic byte
// string, equal for two posets iff they are isomorphic. The canonically
// relabeled poset is kept for rendering.
class ObservationPomset {
 public:
  ObservationPomset() = default;
  static ObservationPomset canonicalize(const LabeledPoset& poset);

  const std::string& bytes() const { return bytes_; }
  const LabeledPoset& canonical_poset() const { return poset_; }
  int size() const { return poset_.size(); }
  std::string render() const;  // e.g. "req<swap_ok<done" style summary

  bool operator==(const ObservationPomset& o) const { return bytes_ == o.bytes_; }
  bool operator<(const ObservationPomset& o) const { return bytes_ < o.bytes_; }

 private:
  std::string bytes_;
  LabeledPoset poset_;
};

// All topological sorts of a poset (indices into the poset's node list).
// Throws std::length_error past `bound` elements.
std::vector<std::vector<int>> poset_linearizations(const LabeledPoset& poset,
                                                   int bound = 12);

// A compiled observation target: canonical form plus a memoized index of the
// canonical forms of all downward-closed restrictions (the pomset prefixes).
class CompiledTarget {
 public:
  CompiledTarget(std::string name, LabeledPoset poset);

  const std::string& name() const { return name_; }
  const LabeledPoset& poset() const { return poset_; }
  const ObservationPomset& canonical() const { return canonical_; }

  bool has_prefix(const ObservationPomset& p) const;  // builds index lazily

 private:
  std::string name_;
  LabeledPoset poset_;
  ObservationPomset canonical_;
  mutable bool index_built_ = false;
  mutable std::set<std::string> prefix_index_;
};

class TargetFamily {
 public:
  TargetFamily() = default;
  static TargetFamily compile(const std::vector<TargetSpec>& specs);

  bool empty() const { return targets_.empty(); }
  size_t size() const { return targets_.size(); }
  const CompiledTarget& operator[](size_t i) const { return *targets_[i]; }
  const CompiledTarget* find(const std::string& name) const;
  const CompiledTarget* match(const ObservationPomset& p) const;

  // True iff p is a pomset prefix of some member.
  bool is_prefix(const ObservationPomset& p) const;

 private:
  std::vector<std::shared_ptr<CompiledTarget>> targets_;
};

}  // namespace opaqnet
