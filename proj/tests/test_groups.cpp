#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "pcode/groups.hpp"

using namespace pcode;

TEST_CASE("named groups: orders and structure") {
  CHECK(make_named("cyclic:6")->order() == 6);
  CHECK(make_named("dihedral:8")->order() == 8);
  CHECK(make_named("sym:3")->order() == 6);
  CHECK(make_named("alt:4")->order() == 12);
  CHECK(make_named("sym:5")->order() == 120);

  auto s3 = make_named("sym:3");
  // non-abelian
  bool commutes = true;
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b)
      if (s3->mul(a, b) != s3->mul(b, a)) commutes = false;
  CHECK(!commutes);

  // Q8 has exactly one involution.
  auto q8 = make_named("quaternion:8");
  int involutions = 0;
  for (Elem a = 1; a < 8; ++a)
    if (q8->mul(a, a) == q8->identity()) ++involutions;
  CHECK(involutions == 1);

  CHECK_THROWS_AS(make_named("cyclic"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("frobenius:20"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("sym:6"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("quaternion:16"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("dihedral:7"), std::invalid_argument);
}

TEST_CASE("group laws on the small corpus") {
  for (const char* spec : {"cyclic:12", "dihedral:12", "quaternion:8", "sym:4"}) {
    auto g = make_named(spec);
    const Elem e = g->identity();
    g->for_each([&](Elem a) {
      CHECK(g->mul(a, e) == a);
      CHECK(g->mul(e, a) == a);
      CHECK(g->mul(a, g->inv(a)) == e);
      CHECK(g->inv(g->inv(a)) == a);
      g->for_each([&](Elem b) {
        CHECK(g->inv(g->mul(a, b)) == g->mul(g->inv(b), g->inv(a)));
        return true;
      });
      return true;
    });
  }
}

TEST_CASE("Cayley table files") {
  const char* path = "z3.table";
  {
    std::ofstream out(path);
    out << "3\n0 1 2\n1 2 0\n2 0 1\n";
  }
  auto g = TableGroup::from_file(path);
  CHECK(g->order() == 3);
  CHECK(g->mul(1, 2) == 0);
  CHECK(g->inv(1) == 2);
  {
    std::ofstream out(path);
    out << "3\n0 1 2\n1 2 0\n2 0 2\n";  // not a latin square
  }
  CHECK_THROWS(TableGroup::from_file(path));
  {
    std::ofstream out(path);
    out << "3\n1 0 2\n0 2 1\n2 1 0\n";  // index 0 not identity
  }
  CHECK_THROWS(TableGroup::from_file(path));
  std::remove(path);
}

TEST_CASE("permutation parsing and printing") {
  auto s3p = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  REQUIRE(s3p);
  Elem t12 = s3p->parse_cycles("(12)");
  CHECK(s3p->mul(t12, t12) == s3p->identity());
  CHECK(s3p->element_repr(t12) == "(12)");
  CHECK(s3p->parse_cycles("e") == s3p->identity());
  Elem r = s3p->parse_cycles("(123)");
  CHECK(s3p->mul(s3p->mul(r, r), r) == s3p->identity());
  CHECK_THROWS_AS(s3p->parse_cycles("(14)"), std::invalid_argument);

  auto a4 = std::dynamic_pointer_cast<PermutationGroup>(make_named("alt:4"));
  REQUIRE(a4);
  CHECK_THROWS_AS(a4->parse_cycles("(12)"), std::invalid_argument);  // odd
}

TEST_CASE("subgroup closure") {
  auto s3 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  auto h = subgroup_closure(s3, {s3->parse_cycles("(12)")});
  CHECK(h->size() == 2);

  auto z4 = make_named("cyclic:4");
  auto c = subgroup_closure(z4, {2});
  CHECK(c->elements() == std::vector<Elem>{0, 2});

  auto trivial = subgroup_closure(z4, {});
  CHECK(trivial->size() == 1);

  CHECK_THROWS_AS(subgroup_closure(z4, {7}), std::invalid_argument);
  auto z24 = make_named("cyclic:24");
  CHECK_THROWS_AS(subgroup_closure(z24, {1}, 10), std::runtime_error);
}

TEST_CASE("explicit subgroup validation") {
  auto z6 = make_named("cyclic:6");
  CHECK_THROWS(ExplicitSubgroup(z6, {0, 1}));     // not closed
  CHECK_THROWS(ExplicitSubgroup(z6, {1, 5}));     // no identity
  CHECK_NOTHROW(ExplicitSubgroup(z6, {0, 2, 4}));
}

TEST_CASE("left cosets") {
  auto z6 = make_named("cyclic:6");
  auto h = subgroup_closure(z6, {3});
  auto part = left_cosets(*z6, *h);
  REQUIRE(part.cells.size() == 3);
  CHECK(part.cells[0] == std::vector<Elem>{0, 3});
  CHECK(part.cells[1] == std::vector<Elem>{1, 4});
  CHECK(part.cells[2] == std::vector<Elem>{2, 5});

  auto whole = subgroup_closure(z6, {1});
  CHECK(left_cosets(*z6, *whole).cells.size() == 1);

  // Cells are disjoint, equal-sized, and cover G, for a non-normal example.
  auto s4 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:4"));
  auto k = subgroup_closure(s4, {s4->parse_cycles("(12)"), s4->parse_cycles("(34)")});
  auto p = left_cosets(*s4, *k);
  std::set<Elem> all;
  for (const auto& cell : p.cells) {
    CHECK(cell.size() == k->size());
    CHECK(p.coset_of.at(cell.front()) == p.coset_of.at(cell.back()));
    all.insert(cell.begin(), cell.end());
  }
  CHECK(all.size() == s4->order());
  CHECK(p.cells.size() * k->size() == s4->order());
}

TEST_CASE("normalizer and normality on small groups") {
  auto s3 = std::dynamic_pointer_cast<PermutationGroup>(make_named("sym:3"));
  auto h = subgroup_closure(s3, {s3->parse_cycles("(12)")});
  auto n = normalizer(s3, *h);
  CHECK(n->size() == 2);
  CHECK(!is_normal(s3, *h));

  auto z6 = make_named("cyclic:6");
  auto c = subgroup_closure(z6, {3});
  CHECK(normalizer(z6, *c)->size() == 6);
  CHECK(is_normal(z6, *c));

  // normalizer always contains H
  auto q8 = make_named("quaternion:8");
  auto i4 = subgroup_closure(q8, {2});
  auto nq = normalizer(q8, *i4);
  i4->for_each([&](Elem x) {
    CHECK(nq->contains(x));
    return true;
  });
}

TEST_CASE("is_2_group") {
  auto z6 = make_named("cyclic:6");
  CHECK(is_2_group(*subgroup_closure(z6, {3})));   // order 2
  CHECK(!is_2_group(*subgroup_closure(z6, {2})));  // order 3
  CHECK(!is_2_group(*subgroup_closure(z6, {1})));  // order 6
}

TEST_CASE("AGL(2,q^2): orders, identity, basic arithmetic") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  CHECK(agl->order() == 2880);  // 16 * 15 * 12
  CHECK(agl->valid(agl->identity()));
  AffineElement id = agl->decode(agl->identity());
  CHECK(id == agl->aff_identity());

  auto t2 = std::make_shared<FieldTower>(2);
  CHECK(make_agl2(t2)->order() == 15'667'200);  // 256 * 255 * 240

  // g * identity = g, for sampled elements.
  int count = 0;
  agl->for_each([&](Elem g) {
    CHECK(agl->mul(g, agl->identity()) == g);
    return ++count < 100;
  });

  // translations are involutions in characteristic 2
  AffineElement tr = agl->aff_identity();
  tr.a1 = t1->alpha();
  Elem tre = agl->encode(tr);
  CHECK(agl->inv(tre) == tre);

  CHECK_THROWS_AS(agl->mul(agl->identity(), 0), std::invalid_argument);  // singular
}

TEST_CASE("phi failure witness squares into H_q") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  // g = ((0, alpha+s)^T, [[1, alpha],[0, 1]]), s = t = 1 at q = 2
  AffineElement g{};
  g.a2 = t1->add(t1->alpha(), t1->s());
  g.m11 = t1->one();
  g.m12 = t1->alpha();
  g.m22 = t1->one();
  AffineElement sq = agl->aff_mul(g, g);
  CHECK(sq.a1 == t1->t());
  CHECK(sq.a2 == t1->zero());
  CHECK(agl->is_identity_matrix(sq));
}

TEST_CASE("H_q membership and enumeration") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  auto hq = make_hq(agl);
  CHECK(hq->size() == 4);
  std::uint64_t count = 0;
  hq->for_each([&](Elem x) {
    CHECK(hq->contains(x));
    ++count;
    return true;
  });
  CHECK(count == 4);

  AffineElement bad = agl->aff_identity();
  bad.a1 = t1->one();
  bad.a2 = t1->alpha();  // alpha not in F_2
  CHECK(!hq->contains(agl->encode(bad)));

  AffineElement good = agl->aff_identity();
  good.a1 = t1->t();
  CHECK(hq->contains(agl->encode(good)));
}

TEST_CASE("affine literals round-trip") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  Elem g = agl->parse_literal("0,3;1,2,0,1");
  AffineElement x = agl->decode(g);
  CHECK(x.a2.bits == 3);
  CHECK(x.m12 == t1->alpha());
  CHECK(agl->element_repr(g) == "(0,3;1,2,0,1)");
  CHECK_THROWS_AS(agl->parse_literal("0,0;1,0,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(agl->parse_literal("0;1,0,0,1"), std::invalid_argument);
}

TEST_CASE("closed-form normalizer equals brute force on AGL(2,4)") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  auto hq = make_hq(agl);
  auto closed = normalizer(agl, *hq);
  CHECK(closed->size() == 96);  // 16 * |GL_2(F_2)| = 16 * 6

  std::vector<Elem> hmembers;
  hq->for_each([&](Elem x) {
    hmembers.push_back(x);
    return true;
  });
  std::uint64_t brute = 0;
  agl->for_each([&](Elem g) {
    bool member = true;
    Elem gi = agl->inv(g);
    for (Elem m : hmembers)
      if (!hq->contains(agl->mul(agl->mul(g, m), gi))) {
        member = false;
        break;
      }
    CHECK(member == closed->contains(g));
    if (member) ++brute;
    return true;
  });
  CHECK(brute == 96);
  CHECK(!is_normal(agl, *hq));
}

TEST_CASE("conjugation formula (a,A)(b,I)(a,A)^-1 = (Ab,I), exhaustive at n=1") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  auto hq = make_hq(agl);
  const FieldTower& f = *t1;
  std::vector<AffineElement> hs;
  hq->for_each([&](Elem x) {
    hs.push_back(agl->decode(x));
    return true;
  });
  agl->for_each([&](Elem ge) {
    AffineElement g = agl->decode(ge);
    AffineElement gi = agl->aff_inv(g);
    for (const AffineElement& h : hs) {
      AffineElement lhs = agl->aff_mul(agl->aff_mul(g, h), gi);
      AffineElement rhs = agl->aff_identity();
      rhs.a1 = f.add(f.mul(g.m11, h.a1), f.mul(g.m12, h.a2));
      rhs.a2 = f.add(f.mul(g.m21, h.a1), f.mul(g.m22, h.a2));
      CHECK(lhs == rhs);
    }
    return true;
  });
}

TEST_CASE("canonical affine index ordering is stable and injective") {
  auto t1 = std::make_shared<FieldTower>(1);
  auto agl = make_agl2(t1);
  Elem prev = 0;
  bool first = true;
  std::uint64_t count = 0;
  agl->for_each([&](Elem g) {
    if (!first) CHECK(g > prev);
    CHECK(agl->decode(g) == agl->decode(g));
    CHECK(agl->encode(agl->decode(g)) == g);
    prev = g;
    first = false;
    ++count;
    return true;
  });
  CHECK(count == agl->order());
}

TEST_CASE("subgroup enumeration matches a power-set oracle on small groups") {
  for (const char* spec : {"cyclic:6", "cyclic:8", "sym:3", "quaternion:8", "cyclic:12"}) {
    auto g = make_named(spec);
    auto subs = enumerate_subgroups(g);

    // Oracle: test every subset (order <= 12) for being a subgroup.
    std::vector<Elem> elems;
    g->for_each([&](Elem x) {
      elems.push_back(x);
      return true;
    });
    std::set<std::vector<Elem>> oracle;
    const std::uint64_t k = elems.size();
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
      std::vector<Elem> sub;
      for (std::uint64_t i = 0; i < k; ++i)
        if (mask >> i & 1) sub.push_back(elems[i]);
      bool closed = true;
      std::set<Elem> s(sub.begin(), sub.end());
      if (!s.count(g->identity())) continue;
      for (Elem a : sub)
        for (Elem b : sub)
          if (!s.count(g->mul(a, b))) closed = false;
      if (closed) oracle.insert(sub);
    }
    std::set<std::vector<Elem>> got;
    for (const auto& sg : subs) got.insert(sg->elements());
    CHECK(got == oracle);
  }
  CHECK(enumerate_subgroups(make_named("cyclic:6")).size() == 4);
}
