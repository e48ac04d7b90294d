#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "pcode/codes.hpp"

using namespace pcode;

namespace {

std::shared_ptr<ExplicitSubgroup> sub(const std::shared_ptr<Group>& g,
                                      std::vector<Elem> gens) {
  return subgroup_closure(g, gens);
}

// Independent oracle for small groups: H is a perfect code iff some subset of
// G is an inverse-closed left transversal, found by exhaustive subset search
// over one representative choice per coset.
bool oracle_perfect_code(const std::shared_ptr<Group>& g, const Subgroup& h) {
  auto part = left_cosets(*g, h);
  const std::size_t k = part.cells.size();
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::vector<Elem> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = part.cells[i][pick[i]];
    std::set<Elem> ts(t.begin(), t.end());
    bool ok = true;
    for (Elem x : t)
      if (!ts.count(g->inv(x))) {
        ok = false;
        break;
      }
    if (ok) return true;
    std::size_t i = 0;
    while (i < k && ++pick[i] == part.cells[i].size()) pick[i++] = 0;
    if (i == k) return false;
  }
}

}  // namespace

TEST_CASE("phi: the order-2 subgroup of Z4 fails at g = 1") {
  auto z4 = make_named("cyclic:4");
  auto h = sub(z4, {2});
  PhiResult r = phi_check(*z4, *h);
  CHECK(!r.holds);
  REQUIRE(r.counterexample);
  CHECK(*r.counterexample == 1);  // 1+1 = 2 in H, but (1+h)^2 is 2 for both h
}

TEST_CASE("phi: holds for Z6 over each of its subgroups") {
  auto z6 = make_named("cyclic:6");
  for (auto gens : {std::vector<Elem>{}, {3}, {2}, {1}}) {
    auto h = sub(z6, gens);
    PhiResult r = phi_check(*z6, *h, true);
    CHECK(r.holds);
    // every recorded witness actually works
    for (auto [g, w] : r.witness_map) {
      CHECK(h->contains(w));
      Elem gw = z6->mul(g, w);
      CHECK(z6->mul(gw, gw) == z6->identity());
    }
  }
}

TEST_CASE("phi: subgroup scope restricts the quantifier") {
  // Phi(G,H) fails for Z4's order-2 subgroup, but Phi(H,H) trivially holds.
  auto z4 = make_named("cyclic:4");
  auto h = sub(z4, {2});
  CHECK(phi_check(*h, *h).holds);
  CHECK(phi_check(*sub(z4, {1}), *h).holds == false);  // scope = whole group
}

TEST_CASE("phi counterexample is the first in canonical order") {
  auto q8 = make_named("quaternion:8");
  auto center = sub(q8, {2});  // the unique order-2 subgroup {e, -1}
  PhiResult r = phi_check(*q8, *center);
  CHECK(!r.holds);
  REQUIRE(r.counterexample);
  // verify minimality against a direct scan
  Elem first = 0;
  bool found = false;
  q8->for_each([&](Elem g) {
    if (!center->contains(q8->mul(g, g))) return true;
    bool fixable = false;
    center->for_each([&](Elem h) {
      Elem gh = q8->mul(g, h);
      if (q8->mul(gh, gh) == q8->identity()) fixable = true;
      return !fixable;
    });
    if (!fixable) {
      first = g;
      found = true;
      return false;
    }
    return true;
  });
  REQUIRE(found);
  CHECK(*r.counterexample == first);
}

TEST_CASE("two-group criterion: applicability and verdicts") {
  auto q8 = make_named("quaternion:8");
  std::shared_ptr<const Subgroup> center = sub(q8, {2});
  auto out = two_group_criterion(q8, center);
  CHECK(out.applicable);
  CHECK(out.verdict == Verdict::not_perfect_code);
  CHECK(out.normalizer_size == 8);  // center is normal

  auto s3 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  std::shared_ptr<const Subgroup> t = sub(s3, {s3->parse_cycles("(12)")});
  auto out2 = two_group_criterion(s3, t);
  CHECK(out2.applicable);
  CHECK(out2.verdict == Verdict::perfect_code);
  CHECK(out2.normalizer_size == 2);  // N(H) = H, Phi(H,H) always holds

  auto z6 = make_named("cyclic:6");
  std::shared_ptr<const Subgroup> three = sub(z6, {2});
  auto out4 = two_group_criterion(z6, three);
  CHECK(!out4.applicable);  // order 3 is not a 2-group
}

TEST_CASE("transversal searches agree on cyclic groups") {
  auto z6 = make_named("cyclic:6");
  auto h3 = sub(z6, {3});
  auto bt = transversal_search_backtracking(*z6, *h3);
  auto mt = transversal_search_matching(*z6, *h3);
  CHECK(bt.status == SearchStatus::found);
  CHECK(mt.status == SearchStatus::found);
  REQUIRE(bt.witness);
  REQUIRE(mt.witness);
  CHECK(validate_transversal(*z6, *h3, *bt.witness));
  CHECK(validate_transversal(*z6, *h3, *mt.witness));
  CHECK(bt.witness->elements.size() == 3);

  auto z4 = make_named("cyclic:4");
  auto h2 = sub(z4, {2});
  CHECK(transversal_search_backtracking(*z4, *h2).status == SearchStatus::none);
  CHECK(transversal_search_matching(*z4, *h2).status == SearchStatus::none);
}

TEST_CASE("require_identity forces e into the witness") {
  auto s3 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  auto h = sub(s3, {s3->parse_cycles("(12)")});
  for (bool matching : {false, true}) {
    auto r = matching ? transversal_search_matching(*s3, *h, 1'000'000, true)
                      : transversal_search_backtracking(*s3, *h, 5000, true);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.witness->contains_identity);
    CHECK(validate_transversal(*s3, *h, *r.witness));
  }
}

TEST_CASE("validate_transversal rejects bad sets") {
  auto z6 = make_named("cyclic:6");
  auto h = sub(z6, {3});
  TransversalWitness w;
  w.elements = {0, 1, 5};
  w.contains_identity = true;
  CHECK(validate_transversal(*z6, *h, w));
  w.elements = {0, 1, 2};  // 1^{-1} = 5 missing
  CHECK(!validate_transversal(*z6, *h, w));
  w.elements = {0, 1, 4};  // 1 and 4 share a coset
  CHECK(!validate_transversal(*z6, *h, w));
  w.elements = {0, 1};  // wrong size
  CHECK(!validate_transversal(*z6, *h, w));
}

TEST_CASE("connection set from a transversal") {
  auto z6 = make_named("cyclic:6");
  TransversalWitness w;
  w.elements = {0, 1, 5};
  w.contains_identity = true;
  ConnectionSet s = connection_set_from_transversal(*z6, w);
  CHECK(s.elements == std::vector<Elem>{1, 5});

  TransversalWitness no_id;
  no_id.elements = {1, 2, 5};
  CHECK_THROWS_AS(connection_set_from_transversal(*z6, no_id), std::invalid_argument);
}

TEST_CASE("definitional Cayley graph check") {
  auto z6 = make_named("cyclic:6");
  ConnectionSet s;
  s.elements = {1, 5};
  CHECK(cayley_perfect_code_check(*z6, s, {0, 3}));
  CHECK(!cayley_perfect_code_check(*z6, s, {0, 2}));  // 1 dominated twice
  CHECK(!cayley_perfect_code_check(*z6, s, {0}));     // 3 uncovered

  ConnectionSet with_id;
  with_id.elements = {0, 1, 5};
  CHECK_THROWS_AS(cayley_perfect_code_check(*z6, with_id, {0}), std::invalid_argument);
  ConnectionSet not_closed;
  not_closed.elements = {1};
  CHECK_THROWS_AS(cayley_perfect_code_check(*z6, not_closed, {0}), std::invalid_argument);
}

TEST_CASE("graph check on the cube Z2^3: codimension-1 code") {
  // Z2^3 as a table group: xor on {0..7}. S = {1,2,4}, C = {0,7} is the
  // standard perfect 1-code on the 3-cube.
  std::vector<std::uint32_t> table(64);
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) table[a * 8 + b] = a ^ b;
  TableGroup cube(table, 8, "Z2^3");
  ConnectionSet s;
  s.elements = {1, 2, 4};
  CHECK(cayley_perfect_code_check(cube, s, {0, 7}));
  CHECK(!cayley_perfect_code_check(cube, s, {0, 3}));

  // t = 2 sanity: radius-2 balls around {0,4} in the 8-cycle overlap at 2
  // and 6, and one ball misses a cube vertex.
  auto z8 = make_named("cyclic:8");
  ConnectionSet step;
  step.elements = {1, 7};
  CHECK(!cayley_perfect_code_check(*z8, step, {0, 4}, 2));
  CHECK(!cayley_perfect_code_check(cube, s, {0}, 2));
  // Positive t = 2 case: the radius-2 ball around 0 is all of the 5-cycle.
  auto z5 = make_named("cyclic:5");
  ConnectionSet step5;
  step5.elements = {1, 4};
  CHECK(cayley_perfect_code_check(*z5, step5, {0}, 2));
}

TEST_CASE("decision pipeline matches the exhaustive oracle on a corpus") {
  std::vector<std::shared_ptr<Group>> corpus;
  for (int k : {1, 2, 3, 4, 6, 8, 12})
    corpus.push_back(make_named("cyclic:" + std::to_string(k)));
  for (int k : {4, 6, 8, 12})
    corpus.push_back(make_named("dihedral:" + std::to_string(k)));
  corpus.push_back(make_named("quaternion:8"));
  corpus.push_back(make_named("sym:3"));
  corpus.push_back(make_named("sym:4"));
  corpus.push_back(make_named("alt:4"));

  DecisionPolicy policy;
  policy.cross_validate = true;  // throws on any internal disagreement
  for (auto& g : corpus) {
    for (auto& h : enumerate_subgroups(g)) {
      DecisionReport rep = is_perfect_code(g, h, policy);
      REQUIRE(rep.verdict != Verdict::inconclusive);
      bool expect = oracle_perfect_code(g, *h);
      CHECK((rep.verdict == Verdict::perfect_code) == expect);
      if (rep.transversal) CHECK(validate_transversal(*g, *h, *rep.transversal));
    }
  }
}

TEST_CASE("decision pipeline: fixed spot checks") {
  auto z4 = make_named("cyclic:4");
  CHECK(is_perfect_code(z4, sub(z4, {2})).verdict == Verdict::not_perfect_code);

  auto q8 = make_named("quaternion:8");
  CHECK(is_perfect_code(q8, sub(q8, {2})).verdict == Verdict::not_perfect_code);

  auto z6 = make_named("cyclic:6");
  for (auto gens : {std::vector<Elem>{}, {3}, {2}, {1}})
    CHECK(is_perfect_code(z6, sub(z6, gens)).verdict == Verdict::perfect_code);

  auto s3 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  auto rep = is_perfect_code(s3, sub(s3, {s3->parse_cycles("(12)")}));
  CHECK(rep.verdict == Verdict::perfect_code);
  REQUIRE(rep.transversal);
  CHECK(rep.transversal->contains_identity);
  REQUIRE(rep.connection_set);
  // the verdict was re-confirmed on the actual graph
  bool graph_confirmed = false;
  for (const auto& m : rep.methods)
    if (m.name == "direct_graph" && m.outcome == "confirmed") graph_confirmed = true;
  CHECK(graph_confirmed);
}

TEST_CASE("degenerate subgroups") {
  auto s4 = make_named("sym:4");
  CHECK(is_perfect_code(s4, sub(s4, {})).verdict == Verdict::perfect_code);  // H = {e}
  std::vector<Elem> all;
  s4->for_each([&](Elem x) {
    all.push_back(x);
    return true;
  });
  auto whole = std::make_shared<ExplicitSubgroup>(s4, all);
  CHECK(is_perfect_code(s4, whole).verdict == Verdict::perfect_code);  // H = G
}

TEST_CASE("report serialization is stable and omits timings by default") {
  auto z6 = make_named("cyclic:6");
  auto rep = is_perfect_code(z6, sub(z6, {3}));
  auto j1 = rep.to_json();
  auto j2 = rep.to_json();
  CHECK(j1.dump() == j2.dump());
  CHECK(j1["verdict"] == "perfect_code");
  CHECK(!j1["methods"].empty());
  CHECK(j1["methods"][0].count("millis") == 0);
  auto jt = rep.to_json(true);
  CHECK(jt["methods"][0].count("millis") == 1);
}
