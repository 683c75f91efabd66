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

#include <optional>
#include <string>
#include <vector>

#include "opaqnet/program.hpp"
#include "opaqnet/rational.hpp"

namespace opaqnet {

// Parse- or reference-level failure in a model file.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& message) : std::runtime_error(message) {}
};

class NotEnabledError : public std::logic_error {
 public:
  explicit NotEnabledError(const std::string& message) : std::logic_error(message) {}
};

inline constexpr const char* kTauLabel = "tau";

// Safe-net marking as a place bitmask. Models are capped at 64 places and 64
// registers, which the parser enforces.
using Marking = uint64_t;

struct Branch {
  std::string outcome;
  std::string label;  // observable label or kTauLabel
  Program program;

  bool silent() const { return label == kTauLabel; }
};

struct Transition {
  std::string id;
  Marking preset = 0;
  Marking postset = 0;
  uint64_t access = 0;  // register mask, Acc(t)
  bool controllable = false;
  bool masking = false;
  bool evaluation_cut = false;
  std::vector<Branch> branches;
};

struct SecretSpec {
  enum class Mode { MarkingSet, EventPredicate };
  Mode mode = Mode::MarkingSet;
  std::vector<Marking> markings;     // MarkingSet: Sec as explicit marking list
  std::vector<int> transitions;      // EventPredicate: transition indices
};

// A target observation pomset as written in a model file or on the CLI:
// labeled nodes plus strict-order pairs. A label chain is the common case.
struct TargetSpec {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> order;  // (before, after) node indices

  static TargetSpec chain(const std::string& name,
                          const std::vector<std::string>& labels);
};

struct MaskingCatalogEntry {
  enum class Kind { Depolarize, Twirl };
  std::string id;
  std::vector<int> targets;  // register indices, subset of A
  Kind kind = Kind::Depolarize;
};

struct AdmissibilitySpec {
  std::vector<std::string> required_observations;  // target names
  bool forbid_deadlock = false;
  int completion_place = -1;
};

struct CostModel {
  Rational default_disable = 1;
  Rational default_mask = 1;
  std::vector<std::pair<std::string, Rational>> disable_price;
  std::vector<std::pair<std::string, Rational>> mask_price;

  Rational disable_cost(const std::string& transition) const;
  Rational mask_unit_cost(const std::string& mask_id) const;
};

struct ArchitectureSpec {
  std::vector<MaskingCatalogEntry> catalog;
  AdmissibilitySpec admissibility;
  CostModel cost;
};

struct NetModel {
  std::vector<std::string> places;
  std::vector<std::string> registers;
  std::vector<Transition> transitions;
  Marking initial_marking = 0;
  PrepSpec initial_state;
  std::vector<int> attacker_interface;  // ascending register indices
  SecretSpec secret;
  std::vector<std::string> observable_alphabet;
  std::vector<TargetSpec> targets;                // optional
  std::optional<ArchitectureSpec> architecture;   // optional

  int num_places() const { return static_cast<int>(places.size()); }
  int num_registers() const { return static_cast<int>(registers.size()); }
  int place_index(const std::string& id) const;
  int register_index(const std::string& id) const;
  int transition_index(const std::string& id) const;

  std::vector<int> attacker_registers() const { return attacker_interface; }
  bool marking_secret(Marking m) const;
  std::string marking_to_string(Marking m) const;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string invariant;  // short name of the violated invariant
  std::string subject;    // offending id
  std::string message;
};

// Model-file schema round trip. parse_model resolves all id references and
// enforces schema-level constraints (qubit registers, known gate names,
// stabilizer-only programs); structural invariants are validate_model's job.
NetModel parse_model(const std::string& text);
std::string serialize_model(const NetModel& m);
std::vector<Diagnostic> validate_model(const NetModel& m);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

// Contact-free firing rule.
bool enabled(Marking m, const Transition& t);
Marking fire(Marking m, const Transition& t);
bool structurally_independent(const Transition& t1, const Transition& t2);

}  // namespace opaqnet
