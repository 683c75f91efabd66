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

#include <map>
#include <random>

#include "doctest.h"

using namespace opaqnet;

namespace {

LabeledPoset permuted(const LabeledPoset& p, const std::vector<int>& perm) {
  // node i of the result is node perm[i] of the input
  return p.restrict_to(perm);
}

bool isomorphic_brute(const LabeledPoset& a, const LabeledPoset& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> perm(a.size());
  for (int i = 0; i < a.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int i = 0; ok && i < a.size(); ++i) {
      if (a.labels[i] != b.labels[perm[i]]) ok = false;
      for (int j = 0; ok && j < a.size(); ++j)
        if (a.less[i][j] != b.less[perm[i]][perm[j]]) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    LabeledPoset p;
    const char* labels[] = {"a", "b", "c"};
    for (int v = 0; v < n; ++v) p.add_node(labels[rng() % 3]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) p.add_less(i, j);
    p.close();
    REQUIRE(p.is_strict_order());
    auto canon = ObservationPomset::canonicalize(p);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto canon2 = ObservationPomset::canonicalize(permuted(p, perm));
    CHECK(canon.bytes() == canon2.bytes());
  }
}

TEST_CASE("non-isomorphic posets up to 5 nodes and 2 labels get distinct bytes") {
  // Enumerate all strict orders on {0..n-1} with edges i<j only (every poset
  // is isomorphic to such a topological presentation), all 2-labelings.
  std::map<std::string, std::vector<LabeledPoset>> buckets;
  for (int n = 0; n <= 5; ++n) {
    int pairs = n * (n - 1) / 2;
    for (uint32_t edges = 0; edges < (uint32_t{1} << pairs); ++edges) {
      LabeledPoset base;
      for (int v = 0; v < n; ++v) base.add_node("?");
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (edges & (uint32_t{1} << bit)) base.add_less(i, j);
      base.close();
      // keep only transitively-closed presentations to avoid duplicates of
      // the same relation
      bit = 0;
      bool closed_form = true;
      for (int i = 0; i < n && closed_form; ++i)
        for (int j = i + 1; j < n && closed_form; ++j, ++bit)
          if (base.less[i][j] != bool(edges & (uint32_t{1} << bit)))
            closed_form = false;
      if (!closed_form) continue;
      for (uint32_t lab = 0; lab < (uint32_t{1} << n); ++lab) {
        LabeledPoset p = base;
        for (int v = 0; v < n; ++v)
          p.labels[v] = (lab & (uint32_t{1} << v)) ? "x" : "y";
        buckets[ObservationPomset::canonicalize(p).bytes()].push_back(p);
      }
    }
  }
  CHECK(buckets.size() > 100);
  // same bytes must mean isomorphic
  size_t checked = 0;
  for (auto& [bytes, members] : buckets) {
    for (size_t i = 1; i < members.size(); ++i) {
      REQUIRE(isomorphic_brute(members[0], members[i]));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("linearization counts") {
  // 3-chain: exactly one order
  LabeledPoset chain;
  for (int i = 0; i < 3; ++i) chain.add_node("c");
  chain.add_less(0, 1);
  chain.add_less(1, 2);
  chain.close();
  CHECK(poset_linearizations(chain).size() == 1);

  // two unordered nodes: two orders
  LabeledPoset pair;
  pair.add_node("a");
  pair.add_node("b");
  CHECK(poset_linearizations(pair).size() == 2);

  // m-chain of cal alongside the 3-element foreground chain: C(m+3,3)
  for (int mcal : {1, 2, 4}) {
    LabeledPoset both;
    for (int i = 0; i < 3; ++i) both.add_node("fg");
    for (int i = 0; i < mcal; ++i) both.add_node("cal");
    both.add_less(0, 1);
    both.add_less(1, 2);
    for (int i = 0; i < mcal - 1; ++i) both.add_less(3 + i, 4 + i);
    both.close();
    size_t expected = 1;
    // C(m+3, 3)
    expected = static_cast<size_t>((mcal + 1) * (mcal + 2) * (mcal + 3) / 6);
    CHECK(poset_linearizations(both).size() == expected);
  }

  LabeledPoset big;
  for (int i = 0; i < 13; ++i) big.add_node("n");
  CHECK_THROWS_AS(poset_linearizations(big), std::length_error);
}

TEST_CASE("pomset prefix checking") {
  TargetSpec fg = TargetSpec::chain("O_fg", {"req", "swap_ok", "done"});
  TargetFamily fam = TargetFamily::compile({fg});

  LabeledPoset empty;
  CHECK(fam.is_prefix(ObservationPomset::canonicalize(empty)));

  LabeledPoset two;
  two.add_node("req");
  two.add_node("swap_ok");
  two.add_less(0, 1);
  two.close();
  CHECK(fam.is_prefix(ObservationPomset::canonicalize(two)));

  // "done" alone is not downward closed in the chain
  LabeledPoset done;
  done.add_node("done");
  CHECK_FALSE(fam.is_prefix(ObservationPomset::canonicalize(done)));

  // unordered req/swap_ok differs from the ordered prefix
  LabeledPoset unordered;
  unordered.add_node("req");
  unordered.add_node("swap_ok");
  CHECK_FALSE(fam.is_prefix(ObservationPomset::canonicalize(unordered)));

  // empty family admits nothing
  TargetFamily none = TargetFamily::compile({});
  CHECK_FALSE(none.is_prefix(ObservationPomset::canonicalize(empty)));
}

TEST_CASE("prefix reflexivity on members") {
  TargetSpec fg = TargetSpec::chain("O_fg", {"req", "swap_ok", "done"});
  TargetSpec mixed;
  mixed.name = "O_mixed";
  mixed.labels = {"a", "b", "c"};
  mixed.order = {{0, 2}};  // a < c, b unordered
  TargetFamily fam = TargetFamily::compile({fg, mixed});
  for (size_t i = 0; i < fam.size(); ++i) CHECK(fam.is_prefix(fam[i].canonical()));
}
