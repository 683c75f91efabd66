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

#include "opaqnet/verifier.hpp"

#include <algorithm>

#include "json.hpp"

namespace opaqnet {

using nlohmann::json;

namespace {

std::vector<std::pair<std::string, std::string>> witness_event_list(
    const Configuration& c, const EventArena& arena, const NetModel& m) {
  std::vector<EventId> order = c.events;
  std::sort(order.begin(), order.end(), [&](EventId a, EventId b) {
    if (arena[a].depth != arena[b].depth) return arena[a].depth < arena[b].depth;
    return a < b;
  });
  std::vector<std::pair<std::string, std::string>> out;
  for (EventId e : order) {
    const auto& br = arena[e].branch;
    out.emplace_back(m.transitions[br.transition].id,
                     m.transitions[br.transition].branches[br.branch].outcome);
  }
  return out;
}

}  // namespace

std::vector<PosteriorAggregate> aggregate(TableauExploration& res,
                                          const NetModel& m,
                                          const TargetFamily& fam) {
  std::vector<int> iface = m.attacker_registers();
  std::vector<PosteriorAggregate> out;
  for (size_t ti = 0; ti < fam.size(); ++ti) {
    const CompiledTarget& target = fam[ti];
    PosteriorAggregate agg[2];
    for (int b = 0; b < 2; ++b) {
      agg[b].obs_name = target.name();
      agg[b].obs = target.canonical();
      agg[b].secret_bit = b;
      agg[b].omega.width = static_cast<int>(iface.size());
      agg[b].omega.registers = iface;
    }
    // BFS order then canonical key already fixes deterministic witnesses.
    for (size_t i = 0; i < res.nodes.size(); ++i) {
      if (!(res.nodes[i].obs == target.canonical())) continue;
      if (!at_maximal_reach(res, static_cast<int>(i), fam, m)) continue;
      const Configuration& c = res.nodes[i].config;
      int b = config_secret(c, res.arena, m) ? 1 : 0;
      agg[b].reachable = true;
      if (!agg[b].witness) {
        agg[b].witness = c.events;
        agg[b].witness_events = witness_event_list(c, res.arena, m);
      }
      agg[b].omega.add_scaled(res.nodes[i].state.reduce_to(iface), 1);
    }
    for (int b = 0; b < 2; ++b) {
      agg[b].omega.prune();
      agg[b].p = agg[b].omega.trace();
      out.push_back(std::move(agg[b]));
    }
  }
  return out;
}

LeakageValue posterior_trace_distance(const PauliCoefficients& x,
                                      const PauliCoefficients& y) {
  if (x.width != y.width)
    throw std::invalid_argument("interface width mismatch");
  LeakageValue v;
  if (x.width == 1) {
    // Half the Bloch-vector distance; coefficients are half the Bloch
    // components, so D^2 = sum of squared coefficient differences.
    Rational sum = 0;
    for (const auto& pat : {PauliCoefficients::Pattern{1, 0},
                            PauliCoefficients::Pattern{1, 1},
                            PauliCoefficients::Pattern{0, 1}}) {
      Rational d = x.coeff(pat) - y.coeff(pat);
      sum += d * d;
    }
    v.exact = ExactRadical::sqrt_of(sum);
    v.value = v.exact->value();
    return v;
  }
  v.value = trace_distance(to_dense(x), to_dense(y));
  return v;
}

LeakageValue leakage(const PosteriorAggregate& a0, const PosteriorAggregate& a1) {
  if (a0.secret_bit != 0 || a1.secret_bit != 1)
    throw std::invalid_argument("leakage expects (b=0, b=1) aggregates");
  LeakageValue v;
  if (a1.p == 0) {
    v.value = 0;
    v.exact = ExactRadical{0, 1};
    return v;
  }
  if (a0.p == 0) {
    v.value = 1;
    v.exact = ExactRadical{1, 1};
    return v;
  }
  PauliCoefficients s0 = a0.omega;
  s0.scale(Rational(1) / a0.p);
  PauliCoefficients s1 = a1.omega;
  s1.scale(Rational(1) / a1.p);
  return posterior_trace_distance(s1, s0);
}

double robust_upper_bound(TableauExploration& res, const NetModel& m,
                          const TargetFamily& fam, const CompiledTarget& target) {
  std::vector<int> iface = m.attacker_registers();
  std::vector<Eigen::MatrixXcd> views[2];
  for (size_t i = 0; i < res.nodes.size(); ++i) {
    if (!(res.nodes[i].obs == target.canonical())) continue;
    if (!at_maximal_reach(res, static_cast<int>(i), fam, m)) continue;
    const Tableau& t = res.nodes[i].state;
    int b = config_secret(res.nodes[i].config, res.arena, m) ? 1 : 0;
    PauliCoefficients view = t.reduce_to(iface);
    view.scale(Rational(1) / t.weight());
    views[b].push_back(to_dense(view));
  }
  if (views[0].empty() || views[1].empty())
    throw std::invalid_argument("robust_upper_bound needs both secrecy sides");
  double best = 0;
  for (const auto& s1 : views[1])
    for (const auto& s0 : views[0])
      best = std::max(best, trace_distance(s1, s0));
  return best;
}

OpacityReport build_report(const NetModel& m, const TargetFamily& fam,
                           double epsilon,
                           const std::vector<PosteriorAggregate>& aggregates,
                           TableauExploration* res_for_bounds) {
  OpacityReport r;
  r.epsilon = epsilon;
  for (size_t ti = 0; ti < fam.size(); ++ti) {
    const PosteriorAggregate& a0 = aggregates[2 * ti];
    const PosteriorAggregate& a1 = aggregates[2 * ti + 1];
    PerObservationReport per;
    per.name = fam[ti].name();
    per.s0 = a0.reachable;
    per.s1 = a1.reachable;
    per.p0 = a0.p;
    per.p1 = a1.p;
    LeakageValue lv = leakage(a0, a1);
    per.leakage_value = lv.value;
    per.leakage_exact = lv.exact_string();
    per.omega0 = a0.omega;
    per.omega1 = a1.omega;
    per.witness0 = a0.witness_events;
    per.witness1 = a1.witness_events;
    if (res_for_bounds && a0.p > 0 && a1.p > 0)
      per.upper_bound = robust_upper_bound(*res_for_bounds, m, fam, fam[ti]);
    if (a1.reachable && !a0.reachable) r.structural_opaque = false;
    r.per_observation.push_back(std::move(per));
  }
  // worst observation: highest leakage, ties broken by family order
  for (const auto& per : r.per_observation) {
    if (r.worst_observation.empty() || per.leakage_value > r.max_leakage) {
      r.max_leakage = per.leakage_value;
      r.worst_observation = per.name;
    }
  }
  r.epsilon_opaque = r.max_leakage <= epsilon + kEpsilonSlack;
  if (m.secret.mode == SecretSpec::Mode::MarkingSet) {
    bool any_secret_reach = false;
    for (const auto& a : aggregates)
      if (a.secret_bit == 1 && a.reachable) any_secret_reach = true;
    if (!any_secret_reach)
      r.warnings.push_back(
          "marking-set secret is unreachable from every targeted observation");
  }
  return r;
}

OpacityReport report(const NetModel& m, const TargetFamily& fam, double epsilon,
                     const ExtensionOptions& opts) {
  TableauEngine engine{&m};
  TableauExploration res = explore(m, fam, engine, opts);
  std::vector<PosteriorAggregate> aggs = aggregate(res, m, fam);
  return build_report(m, fam, epsilon, aggs, &res);
}

namespace {

json coeffs_to_json(const PauliCoefficients& c) {
  json out = json::object();
  for (const auto& [pat, v] : c.coeffs)
    out[PauliCoefficients::pattern_label(pat, c.width)] = rational_to_string(v);
  return out;
}

PauliCoefficients coeffs_from_json(const json& j, int width) {
  PauliCoefficients out;
  out.width = width;
  for (int i = 0; i < width; ++i) out.registers.push_back(i);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto pat = PauliCoefficients::pattern_from_label(it.key());
    out.add(pat, rational_from_string(it.value().get<std::string>()));
  }
  return out;
}

json witness_to_json(const std::vector<std::pair<std::string, std::string>>& w) {
  json out = json::array();
  for (const auto& [t, r] : w) out.push_back({{"transition", t}, {"outcome", r}});
  return out;
}

}  // namespace

std::string content_hash(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_to_json(const OpacityReport& r, const std::string& model_hash,
                           int interface_width) {
  json j;
  j["tool"] = "opaqnet";
  j["version"] = "0.1.0";
  j["model_hash"] = model_hash;
  j["interface_width"] = interface_width;
  j["structural_opaque"] = r.structural_opaque;
  j["epsilon"] = r.epsilon;
  j["epsilon_opaque"] = r.epsilon_opaque;
  j["worst_observation"] = r.worst_observation;
  j["max_leakage"] = r.max_leakage;
  json per = json::array();
  for (const auto& o : r.per_observation) {
    json oj;
    oj["obs"] = o.name;
    oj["S0"] = o.s0 ? 1 : 0;
    oj["S1"] = o.s1 ? 1 : 0;
    oj["p0"] = rational_to_string(o.p0);
    oj["p1"] = rational_to_string(o.p1);
    oj["leakage"] = o.leakage_value;
    if (!o.leakage_exact.empty()) oj["leakage_exact"] = o.leakage_exact;
    if (o.upper_bound) oj["upper_bound"] = *o.upper_bound;
    oj["omega0"] = coeffs_to_json(o.omega0);
    oj["omega1"] = coeffs_to_json(o.omega1);
    oj["witness0"] = witness_to_json(o.witness0);
    oj["witness1"] = witness_to_json(o.witness1);
    per.push_back(oj);
  }
  j["per_observation"] = per;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

OpacityReport report_from_json(const std::string& text, int* interface_width) {
  json j = json::parse(text);
  OpacityReport r;
  r.structural_opaque = j.at("structural_opaque").get<bool>();
  r.epsilon = j.at("epsilon").get<double>();
  r.epsilon_opaque = j.at("epsilon_opaque").get<bool>();
  r.worst_observation = j.value("worst_observation", "");
  r.max_leakage = j.value("max_leakage", 0.0);
  int width = j.value("interface_width", 1);
  if (interface_width) *interface_width = width;
  for (const auto& oj : j.at("per_observation")) {
    PerObservationReport o;
    o.name = oj.at("obs").get<std::string>();
    o.s0 = oj.at("S0").get<int>() != 0;
    o.s1 = oj.at("S1").get<int>() != 0;
    o.p0 = rational_from_string(oj.at("p0").get<std::string>());
    o.p1 = rational_from_string(oj.at("p1").get<std::string>());
    o.leakage_value = oj.at("leakage").get<double>();
    o.leakage_exact = oj.value("leakage_exact", "");
    if (oj.contains("upper_bound")) o.upper_bound = oj.at("upper_bound").get<double>();
    o.omega0 = coeffs_from_json(oj.at("omega0"), width);
    o.omega1 = coeffs_from_json(oj.at("omega1"), width);
    r.per_observation.push_back(std::move(o));
  }
  return r;
}

}  // namespace opaqnet
