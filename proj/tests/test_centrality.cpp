#include <catch2/catch_amalgamated.hpp>

#include <huq/catalog.hpp>
#include <huq/centrality.hpp>

#include "oracles.hpp"

using namespace huq;
using Catch::Matchers::ContainsSubstring;

namespace {

AlgebraPtr pset(int n) {
  return make_algebra("pset" + std::to_string(n), builtin_pset2()->signature_ptr(), n, {{0}});
}

std::vector<std::vector<Index>> rho_maps(const std::vector<CooperatorWitness>& ws) {
  std::vector<std::vector<Index>> out;
  for (const auto& w : ws) out.push_back(w.rho.map);
  return out;
}

} // namespace

TEST_CASE("cooperator search", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  const auto& P2 = builtin_pset2();
  SECTION("xor cooperates with itself through xor alone") {
    auto ws = find_cooperators(identity_hom(Z2), identity_hom(Z2));
    REQUIRE(ws.size() == 1);
    CHECK(ws.front().rho.map == std::vector<Index>{0, 1, 1, 0});
  }
  SECTION("the bare two-point set has two cooperators of (id, id), in map order") {
    auto ws = find_cooperators(identity_hom(P2), identity_hom(P2));
    CHECK(rho_maps(ws) == std::vector<std::vector<Index>>{{0, 1, 1, 0}, {0, 1, 1, 1}});
    for (const auto& w : ws) {
      // axis restrictions recover the cooperating pair
      for (Index a = 0; a < 2; ++a) CHECK(w.rho.map[w.product.pair(a, 0)] == w.f.map[a]);
      for (Index b = 0; b < 2; ++b) CHECK(w.rho.map[w.product.pair(0, b)] == w.g.map[b]);
    }
  }
  SECTION("the lattice identity does not even cooperate with itself") {
    auto id = identity_hom(builtin_lattice2());
    CHECK(find_cooperators(id, id).empty());
    CHECK_FALSE(commutes(id, id));
  }
  SECTION("commutes is the non-emptiness of the search") {
    CHECK(commutes(zero_hom(Z2, Z2), identity_hom(Z2)));
  }
  SECTION("cooperators need a shared codomain") {
    CHECK_THROWS_WITH(
        find_cooperators(identity_hom(Z2), identity_hom(builtin_monoid_trunc3())),
        ContainsSubstring("different codomains"));
  }
}

TEST_CASE("cooperator search agrees with brute-force hom filtering", "[centrality][oracle]") {
  for (const auto& A :
       {builtin_group_z2(), builtin_pset2(), builtin_lattice2(), builtin_monoid_trunc3(),
        builtin_monoid_or(), builtin_monoid_leftzero3()}) {
    INFO("ambient " << A->name());
    auto pd = product(A, A);
    auto all = oracles::brute_homs(pd.prod, A);
    auto endos = enumerate_homs(A, A);
    for (const auto& f : endos) {
      for (const auto& g : endos) {
        std::vector<std::vector<Index>> expect;
        for (const auto& m : all) {
          bool ok = true;
          for (Index a = 0; a < A->size() && ok; ++a) ok = m[pd.pair(a, 0)] == f.map[a];
          for (Index b = 0; b < A->size() && ok; ++b) ok = m[pd.pair(0, b)] == g.map[b];
          if (ok) expect.push_back(m);
        }
        INFO("f = " << json(f.map).dump() << ", g = " << json(g.map).dump());
        CHECK(rho_maps(find_cooperators(f, g)) == expect);
      }
    }
  }
}

TEST_CASE("central homs", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  SECTION("the zero hom is central, via the second projection") {
    auto w = is_central(zero_hom(Z2, Z2));
    REQUIRE(w.has_value());
    CHECK(w->rho.map == std::vector<Index>{0, 1, 0, 1});
  }
  SECTION("the xor identity is central") {
    auto w = is_central(identity_hom(Z2));
    REQUIRE(w.has_value());
    CHECK(w->rho.map == std::vector<Index>{0, 1, 1, 0});
  }
  SECTION("central endo counts across the catalog") {
    auto central_count = [](const AlgebraPtr& A) {
      int c = 0;
      for (const auto& f : enumerate_homs(A, A))
        if (is_central(f)) ++c;
      return c;
    };
    CHECK(central_count(builtin_group_z2()) == 2);
    CHECK(central_count(builtin_lattice2()) == 1);   // only the zero endo
    CHECK(central_count(builtin_monoid_trunc3()) == 3);
    auto LZ3 = builtin_monoid_leftzero3();
    CHECK(enumerate_homs(LZ3, LZ3).size() == 5);
    CHECK(central_count(LZ3) == 1);                  // only the zero endo
  }
}

TEST_CASE("the closed cooperator formula", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  auto w = is_central(identity_hom(Z2));
  REQUIRE(w.has_value());
  SECTION("rho_{f,g} = rho_f . (1 x g)") {
    auto fg = cooperator_via_formula(*w, zero_hom(Z2, Z2));
    CHECK(fg.rho.map == std::vector<Index>{0, 0, 1, 1});
    // and it matches the exhaustive search
    auto searched = find_cooperators(identity_hom(Z2), zero_hom(Z2, Z2));
    REQUIRE(searched.size() == 1);
    CHECK(searched.front().rho.map == fg.rho.map);
  }
  SECTION("the witness must pair its hom with an identity") {
    auto ws = find_cooperators(zero_hom(Z2, Z2), zero_hom(Z2, Z2));
    REQUIRE(ws.size() == 1);
    CHECK(ws.front().rho.map == std::vector<Index>{0, 0, 0, 0});
    CHECK_THROWS_WITH(cooperator_via_formula(ws.front(), identity_hom(Z2)),
                      ContainsSubstring("identity"));
  }
  SECTION("the second hom must land in the witness's codomain") {
    CHECK_THROWS_WITH(
        cooperator_via_formula(*w, zero_hom(Z2, builtin_monoid_trunc3())),
        ContainsSubstring("codomain differs"));
  }
}

TEST_CASE("the star sum of homs", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  const auto& N3 = builtin_monoid_trunc3();
  SECTION("xor sums") {
    CHECK(star(identity_hom(Z2), identity_hom(Z2)).map == std::vector<Index>{0, 0});
    CHECK(star(zero_hom(Z2, Z2), identity_hom(Z2)).map == std::vector<Index>{0, 1});
  }
  SECTION("truncated-addition sums saturate") {
    CHECK(star(identity_hom(N3), identity_hom(N3)).map == std::vector<Index>{0, 2, 2});
    auto d = make_hom(N3, N3, {0, 2, 2});
    CHECK(star(d, identity_hom(N3)).map == std::vector<Index>{0, 2, 2});
  }
  SECTION("a non-central left operand is rejected") {
    auto id = identity_hom(builtin_lattice2());
    CHECK_THROWS_WITH(star(id, id), ContainsSubstring("not central"));
  }
  SECTION("the operands must share a domain") {
    auto w = is_central(identity_hom(Z2));
    REQUIRE(w.has_value());
    CHECK_THROWS_WITH(star(*w, zero_hom(N3, Z2)),
                      ContainsSubstring("different domains"));
  }
}

TEST_CASE("the monoid of central homs", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  SECTION("xor endos form the two-element group") {
    auto t = z_monoid(Z2, Z2);
    CHECK(t.homs.size() == 2);
    CHECK(t.central == std::vector<int>{0, 1});
    CHECK(t.unit == 0);
    CHECK(t.add == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(t.action == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(t.cooperators.size() == 2);
  }
  SECTION("truncated addition gives the three-element saturating monoid") {
    auto N3 = builtin_monoid_trunc3();
    auto t = z_monoid(N3, N3);
    REQUIRE(t.homs.size() == 3);
    CHECK(t.homs[0].map == std::vector<Index>{0, 0, 0});
    CHECK(t.homs[1].map == std::vector<Index>{0, 1, 2});
    CHECK(t.homs[2].map == std::vector<Index>{0, 2, 2});
    CHECK(t.central == std::vector<int>{0, 1, 2});
    CHECK(t.add == std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 2}, {2, 2, 2}});
    CHECK(t.action == t.add);
  }
  SECTION("the lattice has a trivial centre acting on both endos") {
    auto L2 = builtin_lattice2();
    auto t = z_monoid(L2, L2);
    CHECK(t.homs.size() == 2);
    CHECK(t.central == std::vector<int>{0});
    CHECK(t.add == std::vector<std::vector<int>>{{0}});
    CHECK(t.action == std::vector<std::vector<int>>{{0, 1}});
  }
  SECTION("the or-monoid centre is idempotent") {
    auto t = z_monoid(builtin_monoid_or(), builtin_monoid_or());
    CHECK(t.central == std::vector<int>{0, 1});
    CHECK(t.add == std::vector<std::vector<int>>{{0, 1}, {1, 1}});
  }
  SECTION("the left-zero monoid has only the zero centre, acting trivially") {
    auto LZ3 = builtin_monoid_leftzero3();
    auto t = z_monoid(LZ3, LZ3);
    CHECK(t.homs.size() == 5);
    CHECK(t.central == std::vector<int>{0});
    CHECK(t.add == std::vector<std::vector<int>>{{0}});
    CHECK(t.action == std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
  }
  SECTION("the Klein four-group has all sixteen endos central and self-inverse") {
    auto K = product(Z2, Z2).prod;
    auto t = z_monoid(K, K);
    CHECK(t.homs.size() == 16);
    CHECK(t.central.size() == 16);
    CHECK(t.unit == 0);
    for (size_t i = 0; i < t.central.size(); ++i) {
      CHECK(t.add[i][i] == 0);
      for (size_t j = 0; j < i; ++j) CHECK(t.add[i][j] == t.add[j][i]);
    }
  }
  SECTION("cross-slice hom-sets can be tiny but still structured") {
    auto t = z_monoid(Z2, builtin_monoid_trunc3());
    CHECK(t.homs.size() == 1);
    CHECK(t.central == std::vector<int>{0});
    CHECK(t.add == std::vector<std::vector<int>>{{0}});

    auto u = z_monoid(builtin_pset2(), builtin_trivial());
    CHECK(u.homs.size() == 1);
    CHECK(u.central == std::vector<int>{0});
  }
  SECTION("a non-centralic ambient pair is refused with the failing report") {
    const auto& P2 = builtin_pset2();
    CHECK_THROWS_AS(z_monoid(P2, P2), NotCentralicError);
    try {
      z_monoid(P2, P2);
      FAIL("expected NotCentralicError");
    } catch (const NotCentralicError& e) {
      CHECK(e.report.check == "centralic");
      CHECK(e.report.verdict == Verdict::Fail);
      REQUIRE(e.report.counterexample.has_value());
      CHECK(e.report.counterexample->bindings["x"] == 1);
      CHECK_THAT(e.what(), ContainsSubstring("not certified centralic"));
    }
  }
}

TEST_CASE("symmetrizable central homs", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  const auto& N3 = builtin_monoid_trunc3();
  SECTION("xor endos are their own inverses") {
    auto rz = is_symmetrizable(zero_hom(Z2, Z2));
    CHECK(rz.symmetrizable);
    REQUIRE(rz.inverse.has_value());
    CHECK(rz.inverse->map == std::vector<Index>{0, 0});

    auto ri = is_symmetrizable(identity_hom(Z2));
    CHECK(ri.symmetrizable);
    REQUIRE(ri.inverse.has_value());
    CHECK(ri.inverse->map == std::vector<Index>{0, 1});
  }
  SECTION("saturation destroys inverses") {
    CHECK_FALSE(is_symmetrizable(identity_hom(N3)).symmetrizable);
    CHECK_FALSE(is_symmetrizable(identity_hom(N3)).inverse.has_value());
    CHECK_FALSE(is_symmetrizable(make_hom(N3, N3, {0, 2, 2})).symmetrizable);
    CHECK(is_symmetrizable(zero_hom(N3, N3)).symmetrizable);
    CHECK_FALSE(is_symmetrizable(identity_hom(builtin_monoid_or())).symmetrizable);
  }
  SECTION("on a bare pointed set the identity is symmetrizable") {
    auto r = is_symmetrizable(identity_hom(builtin_pset2()));
    CHECK(r.symmetrizable);
    REQUIRE(r.inverse.has_value());
    CHECK(r.inverse->map == std::vector<Index>{0, 1});
  }
  SECTION("non-central homs are rejected") {
    CHECK_THROWS_WITH(is_symmetrizable(identity_hom(builtin_lattice2())),
                      ContainsSubstring("not central"));
  }
}

TEST_CASE("commutative objects", "[centrality]") {
  SECTION("structures found across the catalog") {
    auto structures = [](const AlgebraPtr& A) {
      std::vector<std::vector<Index>> out;
      for (const auto& h : commutative_structures(A)) out.push_back(h.map);
      return out;
    };
    CHECK(structures(builtin_group_z2()) ==
          std::vector<std::vector<Index>>{{0, 1, 1, 0}});
    CHECK(structures(builtin_pset2()) ==
          std::vector<std::vector<Index>>{{0, 1, 1, 0}, {0, 1, 1, 1}});
    CHECK(structures(builtin_lattice2()).empty());
    CHECK(structures(builtin_monoid_or()) ==
          std::vector<std::vector<Index>>{{0, 1, 1, 1}});
    CHECK(structures(builtin_monoid_trunc3()) ==
          std::vector<std::vector<Index>>{{0, 1, 2, 1, 2, 2, 2, 2, 2}});
    CHECK(structures(builtin_trivial()) == std::vector<std::vector<Index>>{{0}});
    // a unital magma structure on the left-zero monoid would force it
    // commutative, so there is none
    CHECK(structures(builtin_monoid_leftzero3()).empty());
  }
  SECTION("the boolean summary") {
    CHECK(is_commutative_object(builtin_group_z2()));
    CHECK(is_commutative_object(builtin_pset2()));
    CHECK(is_commutative_object(builtin_monoid_or()));
    CHECK(is_commutative_object(builtin_monoid_trunc3()));
    CHECK(is_commutative_object(builtin_trivial()));
    CHECK_FALSE(is_commutative_object(builtin_lattice2()));
    CHECK_FALSE(is_commutative_object(builtin_monoid_leftzero3()));
  }
}

TEST_CASE("internal monoid verification", "[centrality]") {
  const auto& Z2 = builtin_group_z2();
  SECTION("xor as an internal structure on itself") {
    auto pd = product(Z2, Z2);
    auto r = verify_internal_monoid(Z2, make_hom(pd.prod, Z2, {0, 1, 1, 0}));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.stats.at("equations_checked") == 16);
    REQUIRE_FALSE(r.witness.is_null());
    CHECK(r.witness["map"] == json::parse("[0,1,1,0]"));
    CHECK(r.note == "unit, associativity and commutativity all hold");
  }
  SECTION("a unital magma that is not associative") {
    auto P3 = pset(3);
    auto pd = product(P3, P3);
    auto r = verify_internal_monoid(
        P3, make_hom(pd.prod, P3, {0, 1, 2, 1, 2, 0, 2, 1, 0}));
    REQUIRE(r.verdict == Verdict::Fail);
    auto cx = r.counterexample->bindings;
    CHECK(cx["law"] == "associativity");
    CHECK(cx["x"] == 1);
    CHECK(cx["y"] == 1);
    CHECK(cx["z"] == 1);
    CHECK(r.stats.at("equations_checked") == 20);
  }
  SECTION("a unital semigroup that is not commutative") {
    auto P3 = pset(3);
    auto pd = product(P3, P3);
    auto r = verify_internal_monoid(
        P3, make_hom(pd.prod, P3, {0, 1, 2, 1, 1, 1, 2, 2, 2}));
    REQUIRE(r.verdict == Verdict::Fail);
    auto cx = r.counterexample->bindings;
    CHECK(cx["law"] == "commutativity");
    CHECK(cx["x"] == 1);
    CHECK(cx["y"] == 2);
    CHECK(r.stats.at("equations_checked") == 39);
  }
  SECTION("the candidate must be a hom out of the square") {
    auto P3 = pset(3);
    CHECK_THROWS_WITH(verify_internal_monoid(P3, identity_hom(P3)),
                      ContainsSubstring("must map X x X to X"));
    auto pd = product(Z2, Z2);
    Hom not_a_hom{pd.prod, Z2, {0, 1, 1, 1}};
    CHECK_THROWS_WITH(verify_internal_monoid(Z2, not_a_hom),
                      ContainsSubstring("not a homomorphism"));
  }
}

TEST_CASE("abelian objects", "[centrality]") {
  SECTION("xor is abelian with itself as inverse assignment") {
    auto r = is_abelian_object(builtin_group_z2());
    CHECK(r.abelian);
    REQUIRE(r.structure.has_value());
    CHECK(r.structure->map == std::vector<Index>{0, 1, 1, 0});
    REQUIRE(r.inverse.has_value());
    CHECK(r.inverse->map == std::vector<Index>{0, 1});
  }
  SECTION("the one-element algebra is abelian") {
    auto r = is_abelian_object(builtin_trivial());
    CHECK(r.abelian);
    CHECK(r.structure->map == std::vector<Index>{0});
    CHECK(r.inverse->map == std::vector<Index>{0});
  }
  SECTION("a bare two-point set carries the xor group") {
    auto r = is_abelian_object(builtin_pset2());
    CHECK(r.abelian);
    CHECK(r.structure->map == std::vector<Index>{0, 1, 1, 0});
    CHECK(r.inverse->map == std::vector<Index>{0, 1});
  }
  SECTION("saturating addition is commutative but not abelian") {
    auto r = is_abelian_object(builtin_monoid_trunc3());
    CHECK_FALSE(r.abelian);
    REQUIRE(r.structure.has_value());
    CHECK(r.structure->map == std::vector<Index>{0, 1, 2, 1, 2, 2, 2, 2, 2});
    CHECK_FALSE(r.inverse.has_value());
  }
  SECTION("the or-monoid is commutative but not abelian") {
    auto r = is_abelian_object(builtin_monoid_or());
    CHECK_FALSE(r.abelian);
    CHECK(r.structure->map == std::vector<Index>{0, 1, 1, 1});
    CHECK_FALSE(r.inverse.has_value());
  }
  SECTION("non-commutative objects are not abelian and carry no structure") {
    auto l = is_abelian_object(builtin_lattice2());
    CHECK_FALSE(l.abelian);
    CHECK_FALSE(l.structure.has_value());
    auto z = is_abelian_object(builtin_monoid_leftzero3());
    CHECK_FALSE(z.abelian);
    CHECK_FALSE(z.structure.has_value());
  }
}
