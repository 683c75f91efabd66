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

#include "opaqnet/pomset.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace opaqnet {

LabeledPoset LabeledPoset::from_spec(const TargetSpec& spec) {
  LabeledPoset p;
  for (const auto& label : spec.labels) p.add_node(label);
  for (const auto& [a, b] : spec.order) {
    if (a < 0 || b < 0 || a >= p.size() || b >= p.size() || a == b)
      throw std::invalid_argument("target " + spec.name + ": bad order pair");
    p.add_less(a, b);
  }
  p.close();
  if (!p.is_strict_order())
    throw std::invalid_argument("target " + spec.name + ": order is cyclic");
  return p;
}

void LabeledPoset::add_node(const std::string& label) {
  labels.push_back(label);
  for (auto& row : less) row.push_back(false);
  less.emplace_back(labels.size(), false);
}

void LabeledPoset::close() {
  int n = size();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (less[i][k])
        for (int j = 0; j < n; ++j)
          if (less[k][j]) less[i][j] = true;
}

bool LabeledPoset::is_strict_order() const {
  for (int i = 0; i < size(); ++i)
    if (less[i][i]) return false;
  return true;
}

LabeledPoset LabeledPoset::restrict_to(const std::vector<int>& nodes) const {
  LabeledPoset out;
  for (int v : nodes) out.add_node(labels[v]);
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = 0; j < nodes.size(); ++j)
      if (less[nodes[i]][nodes[j]]) out.less[i][j] = true;
  return out;
}

std::vector<int> LabeledPoset::downward_closure(uint64_t node_mask) const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (node_mask & (uint64_t{1} << v)) out.push_back(v);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = 0; v < size(); ++v) {
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      for (int w : out) {
        if (less[v][w]) {
          out.push_back(v);
          grew = true;
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Iterated color refinement: the new color of a node is the rank of
// (old color, sorted predecessor colors, sorted successor colors).
std::vector<int> refine_colors(const LabeledPoset& p, std::vector<int> colors) {
  int n = p.size();
  for (;;) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::vector<Sig> sigs(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> pred, succ;
      for (int w = 0; w < n; ++w) {
        if (p.less[w][v]) pred.push_back(colors[w]);
        if (p.less[v][w]) succ.push_back(colors[w]);
      }
      std::sort(pred.begin(), pred.end());
      std::sort(succ.begin(), succ.end());
      sigs[v] = {colors[v], std::move(pred), std::move(succ)};
    }
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    if (next == colors) return colors;
    colors = std::move(next);
  }
}

std::string bytes_for_order(const LabeledPoset& p, const std::vector<int>& perm) {
  // perm[i] = original node placed at canonical position i
  int n = p.size();
  std::string out = std::to_string(n);
  out.push_back(';');
  for (int i = 0; i < n; ++i) {
    out += p.labels[perm[i]];
    out.push_back('\x01');
  }
  out.push_back(';');
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.push_back(p.less[perm[i]][perm[j]] ? '1' : '0');
  return out;
}

// Backtracking canonical labeling on top of the refined partition; returns
// the lexicographically smallest encoding over all discrete refinements.
std::string canonical_bytes(const LabeledPoset& p, const std::vector<int>& colors,
                            std::vector<int>* best_perm) {
  int n = p.size();
  int cell_color = -1;
  std::vector<int> cell;
  int max_color = -1;
  for (int v = 0; v < n; ++v) max_color = std::max(max_color, colors[v]);
  for (int c = 0; c <= max_color && cell_color < 0; ++c) {
    cell.clear();
    for (int v = 0; v < n; ++v)
      if (colors[v] == c) cell.push_back(v);
    if (cell.size() > 1) cell_color = c;
  }
  if (cell_color < 0) {
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[colors[v]] = v;
    if (best_perm) *best_perm = perm;
    return bytes_for_order(p, perm);
  }
  cell.clear();
  for (int v = 0; v < n; ++v)
    if (colors[v] == cell_color) cell.push_back(v);
  std::string best;
  std::vector<int> best_p;
  for (int v : cell) {
    std::vector<int> next = colors;
    for (int w = 0; w < n; ++w)
      if (next[w] >= cell_color && w != v) ++next[w];
    next[v] = cell_color;
    next = refine_colors(p, next);
    std::vector<int> perm;
    std::string bytes = canonical_bytes(p, next, &perm);
    if (best.empty() || bytes < best) {
      best = bytes;
      best_p = perm;
    }
  }
  if (best_perm) *best_perm = best_p;
  return best;
}

}  // namespace

ObservationPomset ObservationPomset::canonicalize(const LabeledPoset& poset) {
  ObservationPomset out;
  int n = poset.size();
  std::vector<std::string> sorted_labels = poset.labels;
  std::sort(sorted_labels.begin(), sorted_labels.end());
  sorted_labels.erase(std::unique(sorted_labels.begin(), sorted_labels.end()),
                      sorted_labels.end());
  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v)
    colors[v] = static_cast<int>(
        std::lower_bound(sorted_labels.begin(), sorted_labels.end(),
                         poset.labels[v]) -
        sorted_labels.begin());
  colors = refine_colors(poset, colors);
  std::vector<int> perm;
  out.bytes_ = canonical_bytes(poset, colors, &perm);
  out.poset_ = poset.restrict_to(perm);
  return out;
}

std::string ObservationPomset::render() const {
  if (poset_.size() == 0) return "(empty)";
  std::string out;
  for (int v = 0; v < poset_.size(); ++v) {
    if (v) out += " ";
    out += poset_.labels[v];
  }
  out += " |";
  bool any = false;
  for (int i = 0; i < poset_.size(); ++i)
    for (int j = 0; j < poset_.size(); ++j)
      if (poset_.less[i][j]) {
        out += " " + std::to_string(i) + "<" + std::to_string(j);
        any = true;
      }
  if (!any) out += " (unordered)";
  return out;
}

std::vector<std::vector<int>> poset_linearizations(const LabeledPoset& poset,
                                                   int bound) {
  int n = poset.size();
  if (n > bound) throw std::length_error("linearization bound exceeded");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == n) {
      out.push_back(current);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ready = true;
      for (int w = 0; w < n; ++w)
        if (poset.less[w][v] && !used[w]) {
          ready = false;
          break;
        }
      if (!ready) continue;
      used[v] = true;
      current.push_back(v);
      self(self);
      current.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

CompiledTarget::CompiledTarget(std::string name, LabeledPoset poset)
    : name_(std::move(name)),
      poset_(std::move(poset)),
      canonical_(ObservationPomset::canonicalize(poset_)) {}

bool CompiledTarget::has_prefix(const ObservationPomset& p) const {
  if (p.size() > poset_.size()) return false;
  if (!index_built_) {
    // enumerate downward-closed node sets by breadth-first growth
    std::set<uint64_t> seen;
    std::vector<uint64_t> frontier = {0};
    seen.insert(0);
    while (!frontier.empty()) {
      uint64_t mask = frontier.back();
      frontier.pop_back();
      std::vector<int> nodes;
      for (int v = 0; v < poset_.size(); ++v)
        if (mask & (uint64_t{1} << v)) nodes.push_back(v);
      prefix_index_.insert(
          ObservationPomset::canonicalize(poset_.restrict_to(nodes)).bytes());
      for (int v = 0; v < poset_.size(); ++v) {
        if (mask & (uint64_t{1} << v)) continue;
        bool closed = true;
        for (int w = 0; w < poset_.size(); ++w)
          if (poset_.less[w][v] && !(mask & (uint64_t{1} << w))) {
            closed = false;
            break;
          }
        if (!closed) continue;
        uint64_t next = mask | (uint64_t{1} << v);
        if (seen.insert(next).second) frontier.push_back(next);
      }
    }
    index_built_ = true;
  }
  return prefix_index_.count(p.bytes()) > 0;
}

TargetFamily TargetFamily::compile(const std::vector<TargetSpec>& specs) {
  TargetFamily fam;
  for (const auto& spec : specs)
    fam.targets_.push_back(
        std::make_shared<CompiledTarget>(spec.name, LabeledPoset::from_spec(spec)));
  return fam;
}

const CompiledTarget* TargetFamily::find(const std::string& name) const {
  for (const auto& t : targets_)
    if (t->name() == name) return t.get();
  return nullptr;
}

const CompiledTarget* TargetFamily::match(const ObservationPomset& p) const {
  for (const auto& t : targets_)
    if (t->canonical() == p) return t.get();
  return nullptr;
}

bool TargetFamily::is_prefix(const ObservationPomset& p) const {
  for (const auto& t : targets_)
    if (t->has_prefix(p)) return true;
  return false;
}

}  // namespace opaqnet
