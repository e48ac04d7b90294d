#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcode/repro.hpp"

using namespace pcode;

namespace {

std::shared_ptr<AffineGroup> agl_n(unsigned n) {
  return make_agl2(std::make_shared<FieldTower>(n));
}

}  // namespace

TEST_CASE("phi_failure_witness squares into H_q but admits no fixing h") {
  for (unsigned n : {1u, 2u, 3u}) {
    auto agl = agl_n(n);
    auto hq = make_hq(agl);
    const FieldTower& f = agl->tower();
    AffineElement g = phi_failure_witness(*agl);
    CHECK(g.a1 == f.zero());
    CHECK(g.a2 == f.add(f.alpha(), f.s()));
    CHECK(g.m12 == f.alpha());
    AffineElement sq = agl->aff_mul(g, g);
    CHECK(agl->is_identity_matrix(sq));
    CHECK(sq.a1 == f.t());
    CHECK(sq.a2 == f.zero());
    CHECK(hq->contains(agl->encode(sq)));
    // (gh)^2 = ((v*alpha + t, 0)^T, I) for h = ((u,v)^T, I); never the
    // identity since t != 0 and alpha is outside F_q.
    hq->for_each([&](Elem he) {
      AffineElement gh = agl->aff_mul(g, agl->decode(he));
      AffineElement gh2 = agl->aff_mul(gh, gh);
      CHECK(agl->is_identity_matrix(gh2));
      bool is_e = gh2.a1 == f.zero() && gh2.a2 == f.zero();
      CHECK(!is_e);
      return true;
    });
  }
}

TEST_CASE("constructive_h_witness: frozen small cases at q = 2") {
  auto agl = agl_n(1);
  const FieldTower& f = agl->tower();
  const FFElement a = f.alpha(), one = f.one(), zero = f.zero();

  // unipotent matrix, g = ((alpha, 1)^T, [[1,1],[0,1]])
  AffineElement g1{a, one, one, one, zero, one};
  AffineElement h1 = constructive_h_witness(*agl, g1);
  CHECK(h1.a1 == zero);
  CHECK(h1.a2 == one);
  CHECK(agl->is_identity_matrix(h1));

  // antidiagonal matrix (trace term t' = 1 branch), g = ((alpha, alpha+1)^T, [[0,1],[1,0]])
  AffineElement g2{a, f.add(a, one), zero, one, one, zero};
  AffineElement h2 = constructive_h_witness(*agl, g2);
  CHECK(h2.a1 == zero);
  CHECK(h2.a2 == one);

  // identity matrix: any translation in the normalizer squares to 0, h = e
  AffineElement g3{one, zero, one, zero, zero, one};
  AffineElement h3 = constructive_h_witness(*agl, g3);
  CHECK(h3 == agl->aff_identity());

  // rejects inputs outside the normalizer or with g^2 outside H_q
  AffineElement bad1{zero, zero, one, a, zero, one};  // alpha entry: not in N
  CHECK_THROWS_AS(constructive_h_witness(*agl, bad1), std::invalid_argument);
  // ((alpha,0),I)^2 = ((0,0),I) is in H_q even though alpha is not in F_q,
  // so a translation by alpha must be accepted:
  AffineElement tr{a, zero, one, zero, zero, one};
  CHECK_NOTHROW(constructive_h_witness(*agl, tr));
  AffineElement bad3{zero, zero, one, one, one, zero};
  // [[1,1],[1,0]] has order 3; its square is not the identity matrix, so
  // g^2 is outside H_q.
  CHECK_THROWS_AS(constructive_h_witness(*agl, bad3), std::invalid_argument);
}

TEST_CASE("constructive witness matches a brute-force search, exhaustive at q = 2") {
  auto agl = agl_n(1);
  auto hq = make_hq(agl);
  auto norm = normalizer(agl, *hq);
  const Elem e = agl->identity();
  std::uint64_t examined = 0;
  norm->for_each([&](Elem ge) {
    Elem sq = agl->mul(ge, ge);
    if (!hq->contains(sq)) return true;
    ++examined;
    AffineElement h = constructive_h_witness(*agl, agl->decode(ge));
    CHECK(hq->contains(agl->encode(h)));
    Elem gh = agl->mul(ge, agl->encode(h));
    CHECK(agl->mul(gh, gh) == e);
    return true;
  });
  CHECK(examined > 4);  // more than just H_q itself
}

TEST_CASE("verify_phi_failure and verify_normalizer pass standalone") {
  for (unsigned n : {1u, 2u}) {
    auto agl = agl_n(n);
    auto hq = make_hq(agl);
    CheckResult pf = verify_phi_failure(*agl, *hq, n == 1);
    CHECK(pf.pass);
    CHECK(pf.name == "phi_G_fails");
    CheckResult nm = verify_normalizer(*agl, *hq, 42);
    CHECK(nm.pass);
    CHECK(nm.name == "normalizer_matches_closed_form");
  }
}

TEST_CASE("reproduce(1): full check list in order, all passing") {
  ReproReport rep = reproduce(1);
  CHECK(rep.overall);
  CHECK(rep.n == 1);
  CHECK(rep.q == 2);
  CHECK(rep.modulus_hex == "7");
  std::vector<std::string> names;
  for (const auto& c : rep.checks) {
    CHECK(c.pass);
    names.push_back(c.name);
  }
  CHECK(names == std::vector<std::string>{
                     "tower_relation", "hq_is_subgroup", "hq_not_normal",
                     "normalizer_matches_closed_form", "phi_G_fails", "phi_N_holds",
                     "conclusion_perfect_code", "transversal_and_graph_confirm"});
}

TEST_CASE("reproduce(2): sampled run passes with the expected sizes") {
  ReproReport rep = reproduce(2);
  CHECK(rep.overall);
  CHECK(rep.q == 4);
  CHECK(rep.modulus_hex == "13");
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "phi_N_holds") {
      found = true;
      CHECK(c.pass);
      CHECK(c.details["normalizer_scanned"] == 46'080);
    }
  CHECK(found);
  // no graph stage beyond n = 1
  for (const auto& c : rep.checks) CHECK(c.name != "transversal_and_graph_confirm");
}

TEST_CASE("reproduce rejects unsupported n") {
  CHECK_THROWS_AS(reproduce(0), std::invalid_argument);
  CHECK_THROWS_AS(reproduce(4), std::invalid_argument);
}

TEST_CASE("report json shape and determinism") {
  ReproReport rep = reproduce(1);
  auto j = rep.to_json();
  CHECK(j["n"] == 1);
  CHECK(j["overall"] == true);
  CHECK(j["checks"].size() == rep.checks.size());
  CHECK(j["checks"][0].count("millis") == 0);
  CHECK(rep.to_json(true)["checks"][0].count("millis") == 1);

  ReproReport again = reproduce(1);
  CHECK(j.dump() == again.to_json().dump());
}
