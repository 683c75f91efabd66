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

#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace opaqnet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string repeater_path() {
  return std::string(OPAQNET_SOURCE_DIR) + "/examples/repeater.json";
}

}  // namespace

TEST_CASE("repeater model parses with expected shape") {
  NetModel m = parse_model(read_file(repeater_path()));
  CHECK(m.num_places() == 8);
  CHECK(m.transitions.size() == 10);
  CHECK(m.num_registers() == 5);
  REQUIRE(m.attacker_interface.size() == 1);
  CHECK(m.registers[m.attacker_interface[0]] == "q_M");
  CHECK(m.secret.mode == SecretSpec::Mode::EventPredicate);
  CHECK(validate_model(m).empty());
}

TEST_CASE("empty net parses") {
  NetModel m = parse_model(R"({
    "control_places": [],
    "quantum_registers": [],
    "transitions": [],
    "initial_marking": [],
    "initial_state": {"assign": {}},
    "attacker_interface": [],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": []
  })");
  CHECK(m.num_places() == 0);
  CHECK(m.transitions.empty());
  CHECK(validate_model(m).empty());
}

TEST_CASE("unknown place in an arc is a parse error") {
  CHECK_THROWS_WITH_AS(
      parse_model(R"({
        "control_places": ["p_a"],
        "quantum_registers": [],
        "transitions": [
          {"id": "t", "pre": ["p_x"], "post": ["p_a"],
           "branches": [{"outcome": "r", "label": "tau"}]}
        ],
        "initial_marking": [],
        "initial_state": {"assign": {}},
        "attacker_interface": [],
        "secret": {"mode": "marking-set", "markings": []},
        "observable_alphabet": []
      })"),
      doctest::Contains("unknown place"), ModelError);
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_WITH_AS(parse_model("{\n  \"control_places\": [,]\n}"),
                       doctest::Contains("line 2"), ModelError);
}

TEST_CASE("non-qubit register dimension is rejected") {
  CHECK_THROWS_AS(parse_model(R"({
    "control_places": [],
    "quantum_registers": [{"id": "q", "dim": 3}],
    "transitions": [],
    "initial_marking": [],
    "initial_state": {"assign": {"q": "0"}},
    "attacker_interface": [],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": []
  })"),
                  ModelError);
}

TEST_CASE("parse/serialize round trip is the identity on canonical form") {
  std::string text = read_file(repeater_path());
  NetModel m = parse_model(text);
  std::string once = serialize_model(m);
  std::string twice = serialize_model(parse_model(once));
  CHECK(once == twice);
}

TEST_CASE("access violation diagnostic") {
  NetModel m = parse_model(R"({
    "control_places": ["p"],
    "quantum_registers": ["q_a", "q_b"],
    "transitions": [
      {"id": "t", "pre": ["p"], "post": [], "access": ["q_a"],
       "branches": [{"outcome": "r", "label": "tau",
                     "program": [{"gate": {"name": "CNOT", "regs": ["q_a", "q_b"]}}]}]}
    ],
    "initial_marking": ["p"],
    "initial_state": {"assign": {"q_a": "0", "q_b": "0"}},
    "attacker_interface": [],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": []
  })");
  auto diags = validate_model(m);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].invariant == "access violation");
  CHECK(diags[0].subject == "t");
}

TEST_CASE("masking transitions must be invisible") {
  NetModel m = parse_model(R"({
    "control_places": ["p"],
    "quantum_registers": ["q"],
    "transitions": [
      {"id": "t_m", "pre": ["p"], "post": ["p"], "masking": true,
       "branches": [{"outcome": "r", "label": "ping"}]}
    ],
    "initial_marking": ["p"],
    "initial_state": {"assign": {"q": "0"}},
    "attacker_interface": ["q"],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": ["ping"]
  })");
  auto diags = validate_model(m);
  bool found = false;
  for (const auto& d : diags) found |= d.invariant == "masking must be invisible";
  CHECK(found);
}

TEST_CASE("incomplete instruments are flagged by the dense oracle") {
  // A lone projection branch is trace-decreasing, not a channel.
  NetModel m = parse_model(R"({
    "control_places": ["p"],
    "quantum_registers": ["q"],
    "transitions": [
      {"id": "t", "pre": ["p"], "post": [], "access": ["q"],
       "branches": [{"outcome": "only", "label": "tau",
                     "program": [{"project": {"pauli": "Z", "regs": ["q"], "outcome": 1}}]}]}
    ],
    "initial_marking": ["p"],
    "initial_state": {"assign": {"q": "0"}},
    "attacker_interface": ["q"],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": []
  })");
  auto diags = validate_model(m);
  bool found = false;
  for (const auto& d : diags) found |= d.invariant == "instrument completeness";
  CHECK(found);
}

TEST_CASE("firing rule") {
  NetModel m = parse_model(read_file(repeater_path()));
  const Transition& t_req = m.transitions[m.transition_index("t_req")];
  const Transition& t_cal = m.transitions[m.transition_index("t_cal")];
  const Transition& t_reject = m.transitions[m.transition_index("t_reject")];
  const Transition& t_ok_sec = m.transitions[m.transition_index("t_ok_sec")];

  Marking m0 = m.initial_marking;
  CHECK(enabled(m0, t_req));
  CHECK_FALSE(enabled(m0, t_ok_sec));

  Marking m1 = fire(m0, t_req);
  CHECK(m.marking_to_string(m1) == "{p_1,p_bg}");

  // calibration self-loop leaves the marking unchanged
  CHECK(fire(m0, t_cal) == m0);

  // observable abort on the secret lane
  Marking at_sec = (Marking{1} << m.place_index("p_2_sec")) |
                   (Marking{1} << m.place_index("p_bg"));
  Marking after = fire(at_sec, t_reject);
  CHECK(m.marking_to_string(after) == "{p_finish,p_bg}");

  CHECK_THROWS_AS(fire(m0, t_reject), NotEnabledError);
}

TEST_CASE("contact blocks enabledness") {
  NetModel m = parse_model(R"({
    "control_places": ["p_a", "p_b"],
    "quantum_registers": [],
    "transitions": [
      {"id": "t", "pre": ["p_a"], "post": ["p_b"],
       "branches": [{"outcome": "r", "label": "tau"}]}
    ],
    "initial_marking": ["p_a", "p_b"],
    "initial_state": {"assign": {}},
    "attacker_interface": [],
    "secret": {"mode": "marking-set", "markings": []},
    "observable_alphabet": []
  })");
  CHECK_FALSE(enabled(m.initial_marking, m.transitions[0]));
}

TEST_CASE("structural independence") {
  NetModel m = parse_model(read_file(repeater_path()));
  auto& t = m.transitions;
  int cal = m.transition_index("t_cal");
  int req = m.transition_index("t_req");
  int swap = m.transition_index("t_swap_nonsec");
  int pur = m.transition_index("t_pur_sec");
  int ok_n = m.transition_index("t_ok_nonsec");
  int ok_s = m.transition_index("t_ok_sec");

  CHECK(structurally_independent(t[cal], t[req]));
  CHECK_FALSE(structurally_independent(t[swap], t[pur]));   // conflict at p_1
  CHECK_FALSE(structurally_independent(t[ok_n], t[ok_s]));  // both access q_4

  // symmetry
  CHECK(structurally_independent(t[req], t[cal]));
  CHECK_THROWS_AS(structurally_independent(t[cal], t[cal]), std::invalid_argument);
}
