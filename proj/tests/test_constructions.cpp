#include <catch2/catch_amalgamated.hpp>

#include <huq/catalog.hpp>
#include <huq/constructions.hpp>

#include "oracles.hpp"

using namespace huq;

namespace {

AlgebraPtr pset(int n) {
  return make_algebra("pset" + std::to_string(n), builtin_pset2()->signature_ptr(), n, {{0}});
}

std::vector<AlgebraPtr> small_test_algebras() {
  return {
      builtin_lattice2(),
      builtin_group_z2(),
      builtin_pset2(),
      builtin_monoid_or(),
      builtin_monoid_trunc3(),
      builtin_monoid_leftzero3(),
      builtin_trivial(),
      product(builtin_group_z2(), builtin_group_z2()).prod,
      product(builtin_pset2(), builtin_pset2()).prod,
      product(builtin_group_z2(), builtin_monoid_trunc3()).prod,
      product(builtin_lattice2(), builtin_lattice2()).prod,
      pset(4),
  };
}

} // namespace

TEST_CASE("generate_congruence matches the partition-meet oracle", "[constructions][oracle]") {
  for (const auto& A : small_test_algebras()) {
    INFO("algebra " << A->name());
    int n = A->size();
    for (Index a = 0; a < n; ++a)
      for (Index b = a; b < n; ++b) {
        auto got = generate_congruence(A, {{a, b}});
        auto want = oracles::brute_generated_congruence(A, {{a, b}});
        INFO("seed (" << a << "," << b << ")");
        CHECK(got.repr == want);
      }
    // a couple of multi-pair seeds
    if (n >= 3) {
      auto got = generate_congruence(A, {{0, 1}, {1, 2}});
      auto want = oracles::brute_generated_congruence(A, {{0, 1}, {1, 2}});
      CHECK(got.repr == want);
    }
  }
}

TEST_CASE("all_congruences equals the compatible-partition filter", "[constructions][oracle]") {
  for (const auto& A : small_test_algebras()) {
    if (A->size() > 8) continue;
    INFO("algebra " << A->name());
    auto got = all_congruences(A);
    auto want = oracles::brute_all_congruences(A);
    REQUIRE(got.size() == want.size());
    std::set<std::vector<Index>> got_set, want_set;
    for (auto& c : got) got_set.insert(c.repr);
    for (auto& p : want) want_set.insert(p);
    CHECK(got_set == want_set);
  }
}

TEST_CASE("all_congruences frozen counts and ordering", "[constructions]") {
  CHECK(all_congruences(builtin_trivial()).size() == 1);
  CHECK(all_congruences(builtin_group_z2()).size() == 2);
  CHECK(all_congruences(builtin_pset2()).size() == 2);
  CHECK(all_congruences(builtin_monoid_trunc3()).size() == 3);

  // Klein four group: 1 + 3 proper + 1 total
  auto klein = product(builtin_group_z2(), builtin_group_z2()).prod;
  auto cons = all_congruences(klein);
  CHECK(cons.size() == 5);
  // finest first, coarsest last
  CHECK(cons.front().num_classes() == 4);
  CHECK(cons.back().num_classes() == 1);

  // every partition of a pointed set is a congruence
  auto p4 = pset(4);
  CHECK(all_congruences(p4).size() == 15);

  // the carrier cap refuses loudly
  CHECK_THROWS_AS(all_congruences(p4, 3), CapExceeded);
  try {
    all_congruences(p4, 3);
  } catch (const CapExceeded& e) {
    CHECK(e.required == 4);
  }
}

TEST_CASE("kernel and quotient round-trip", "[constructions]") {
  for (const auto& A : small_test_algebras()) {
    if (A->size() > 9) continue;
    INFO("algebra " << A->name());
    for (const auto& theta : all_congruences(A)) {
      auto Q = quotient(A, theta);
      CHECK(Q.algebra->size() == theta.num_classes());
      CHECK(Q.q.map[0] == 0); // the class of the point is the point
      CHECK(is_surjective(Q.q));
      CHECK_NOTHROW(make_hom(A, Q.algebra, Q.q.map)); // q really is a hom
      CHECK(kernel_congruence(Q.q).repr == theta.repr);
    }
  }
}

TEST_CASE("kernel of zero and identity", "[constructions]") {
  auto n3 = builtin_monoid_trunc3();
  CHECK(kernel_congruence(zero_hom(n3, n3)).repr == total_congruence(n3).repr);
  CHECK(kernel_congruence(identity_hom(n3)).repr == equality_congruence(n3).repr);
}

TEST_CASE("quotient rejects non-congruences", "[constructions]") {
  auto n3 = builtin_monoid_trunc3();
  // {0,1 | 2} is not compatible with truncated addition: 1+1=2 but 0+1=1
  Congruence bogus{n3, {0, 0, 2}};
  CHECK_THROWS_AS(quotient(n3, bogus), PreconditionError);
}

TEST_CASE("product tables, projections, injections", "[constructions]") {
  auto z2 = builtin_group_z2();
  auto pd = product(z2, z2);
  REQUIRE(pd.prod->size() == 4);

  // componentwise xor: (1,0) + (0,1) = (1,1)
  CHECK(pd.prod->apply2(0, pd.pair(1, 0), pd.pair(0, 1)) == pd.pair(1, 1));
  CHECK(pd.prod->apply2(0, pd.pair(1, 1), pd.pair(1, 0)) == pd.pair(0, 1));

  CHECK(hom_equal(compose_homs(pd.proj1, pd.inj1), identity_hom(z2)));
  CHECK(hom_equal(compose_homs(pd.proj2, pd.inj2), identity_hom(z2)));
  CHECK(hom_equal(compose_homs(pd.proj2, pd.inj1), zero_hom(z2, z2)));
  CHECK(hom_equal(compose_homs(pd.proj1, pd.inj2), zero_hom(z2, z2)));

  // diagonal and swap laws
  CHECK(hom_equal(compose_homs(pd.swap, pd.swap), identity_hom(pd.prod)));
  CHECK(hom_equal(compose_homs(pd.swap, pd.diagonal), pd.diagonal));
  CHECK(compose_homs(pd.proj1, pd.swap).map == pd.proj2.map);

  // all four structural maps really are homs
  for (const Hom* h : {&pd.proj1, &pd.proj2, &pd.inj1, &pd.inj2, &pd.diagonal, &pd.swap})
    CHECK_NOTHROW(make_hom(h->dom, h->cod, h->map));

  // pair/unpair round-trip
  for (Index p = 0; p < pd.prod->size(); ++p) {
    auto [a, b] = pd.unpair(p);
    CHECK(pd.pair(a, b) == p);
  }

  CHECK_THROWS_AS(product(z2, builtin_monoid_or()), PreconditionError);
}

TEST_CASE("mixed product across the additive slice", "[constructions]") {
  auto pd = product(builtin_group_z2(), builtin_monoid_trunc3());
  CHECK(pd.prod->size() == 6);
  CHECK_NOTHROW(validate_algebra(*pd.prod));
  // (1,1) + (1,1) = (0,2)
  CHECK(pd.prod->apply2(0, pd.pair(1, 1), pd.pair(1, 1)) == pd.pair(0, 2));
}

TEST_CASE("surjections are stable under products", "[constructions]") {
  // take genuine quotient surjections and product them
  auto n3 = builtin_monoid_trunc3();
  auto z2 = builtin_group_z2();
  auto thetas_n3 = all_congruences(n3);
  auto thetas_z2 = all_congruences(z2);
  for (const auto& t1 : thetas_n3)
    for (const auto& t2 : thetas_z2) {
      auto q1 = quotient(n3, t1);
      auto q2 = quotient(z2, t2);
      auto hp = hom_product(q1.q, q2.q);
      CHECK(is_surjective(hp.hom));
      CHECK_NOTHROW(make_hom(hp.hom.dom, hp.hom.cod, hp.hom.map));
    }
}

TEST_CASE("coequaliser is couniversal", "[constructions]") {
  struct SlicePair {
    AlgebraPtr a, b;
  };
  std::vector<SlicePair> pairs = {
      {builtin_group_z2(), builtin_group_z2()},
      {builtin_monoid_trunc3(), builtin_monoid_trunc3()},
      {builtin_group_z2(), builtin_monoid_trunc3()},
      {builtin_monoid_or(), builtin_monoid_or()},
      {builtin_pset2(), builtin_pset2()},
      {builtin_monoid_leftzero3(), builtin_monoid_leftzero3()},
  };
  for (auto& [A, B] : pairs) {
    auto homs = enumerate_homs(A, B);
    for (const auto& f : homs)
      for (const auto& g : homs) {
        auto ce = coequaliser(f, g);
        CHECK(compose_homs(ce.quot.q, f).map == compose_homs(ce.quot.q, g).map);
        // couniversal against every test object in the slice
        for (const auto& T : slice_members(*B)) {
          for (const auto& h : enumerate_homs(B, T)) {
            if (compose_homs(h, f).map != compose_homs(h, g).map) continue;
            int factorizations = 0;
            for (const auto& hp : enumerate_homs(ce.quot.algebra, T))
              if (compose_homs(hp, ce.quot.q).map == h.map) ++factorizations;
            CHECK(factorizations == 1);
          }
        }
      }
  }
}

TEST_CASE("coequaliser of the two axis injections of Z2", "[constructions]") {
  auto z2 = builtin_group_z2();
  auto pd = product(z2, z2);
  auto ce = coequaliser(pd.inj1, pd.inj2);
  CHECK(ce.quot.algebra->size() == 2); // Klein / diagonal-ish antidiagonal
  CHECK(is_surjective(ce.quot.q));
}

TEST_CASE("factor_through_quotient", "[constructions]") {
  auto n3 = builtin_monoid_trunc3();
  auto squash = make_hom(n3, n3, {0, 2, 2});
  auto Q = quotient(n3, kernel_congruence(squash));
  auto through = factor_through_quotient(squash, Q);
  REQUIRE(through.has_value());
  CHECK(compose_homs(*through, Q.q).map == squash.map);
  // identity does not factor through a proper quotient
  CHECK_FALSE(factor_through_quotient(identity_hom(n3), Q).has_value());
}

TEST_CASE("subalgebra generation", "[constructions]") {
  SECTION("axes of pset2 x pset2 generate only the axes") {
    auto pd = product(builtin_pset2(), builtin_pset2());
    auto sub = subalgebra_generate(pd.prod, {pd.pair(1, 0), pd.pair(0, 1)});
    CHECK(sub.members == std::vector<Index>{pd.pair(0, 0), pd.pair(0, 1), pd.pair(1, 0)});
  }
  SECTION("axes of lattice2 x lattice2 generate the whole product") {
    auto pd = product(builtin_lattice2(), builtin_lattice2());
    auto sub = subalgebra_generate(pd.prod, {pd.pair(1, 0), pd.pair(0, 1)});
    CHECK(sub.members.size() == 4);
  }
  SECTION("empty seed yields the subalgebra generated by the point") {
    auto sub = subalgebra_generate(builtin_monoid_trunc3(), {});
    CHECK(sub.members == std::vector<Index>{0});
    CHECK(sub.sub->size() == 1);
  }
  SECTION("inclusion is a hom and members are closed") {
    auto n3 = builtin_monoid_trunc3();
    auto sub = subalgebra_generate(n3, {1});
    CHECK(sub.members == std::vector<Index>{0, 1, 2}); // 1+1=2
    CHECK_NOTHROW(make_hom(sub.sub, n3, sub.inclusion.map));
    CHECK(sub.members[0] == 0);
  }
  SECTION("seed out of range") {
    CHECK_THROWS_AS(subalgebra_generate(builtin_pset2(), {7}), PreconditionError);
  }
}

TEST_CASE("pullback", "[constructions]") {
  auto n3 = builtin_monoid_trunc3();
  auto squash = make_hom(n3, n3, {0, 2, 2});

  SECTION("kernel pair of a squash map") {
    auto pb = pullback(squash, squash);
    CHECK(pb.apex.sub->size() == 5); // (0,0) and the 2x2 block over {1,2}
    CHECK(compose_homs(squash, pb.to_left).map == compose_homs(squash, pb.to_right).map);
    CHECK_NOTHROW(make_hom(pb.to_left.dom, pb.to_left.cod, pb.to_left.map));
  }
  SECTION("pullback of identities is the diagonal") {
    auto pb = pullback(identity_hom(n3), identity_hom(n3));
    CHECK(pb.apex.sub->size() == 3);
    CHECK(hom_equal(pb.to_left, pb.to_right));
  }
  SECTION("universal property against slice objects") {
    auto pb = pullback(squash, identity_hom(n3));
    for (const auto& T : slice_members(*n3)) {
      auto homs_l = enumerate_homs(T, n3);
      for (const auto& u : homs_l)
        for (const auto& v : homs_l) {
          if (compose_homs(squash, u).map != compose_homs(identity_hom(n3), v).map) continue;
          int mediators = 0;
          for (const auto& m : enumerate_homs(T, pb.apex.sub))
            if (compose_homs(pb.to_left, m).map == u.map &&
                compose_homs(pb.to_right, m).map == v.map)
              ++mediators;
          CHECK(mediators == 1);
        }
    }
  }
  SECTION("mismatched codomains") {
    CHECK_THROWS_AS(pullback(identity_hom(n3), identity_hom(builtin_group_z2())),
                    PreconditionError);
  }
}

TEST_CASE("relation composition", "[constructions]") {
  auto p4 = pset(4);
  auto cons = all_congruences(p4);

  SECTION("identity laws") {
    auto delta = equality_congruence(p4);
    for (const auto& t : cons) {
      CHECK(relation_equal(relation_compose(t, delta), relation_of(t)));
      CHECK(relation_equal(relation_compose(delta, t), relation_of(t)));
    }
  }
  SECTION("factor congruences of a product compose to the total relation") {
    auto pd = product(builtin_group_z2(), builtin_group_z2());
    auto k1 = kernel_congruence(pd.proj1);
    auto k2 = kernel_congruence(pd.proj2);
    CHECK(congruence_meet(k1, k2).num_classes() == 4);
    CHECK(relation_total(relation_compose(k1, k2)));
    CHECK(relation_total(relation_compose(k2, k1)));
  }
  SECTION("a non-permuting pair on a 4-element pointed set") {
    // R = {0,1 | 2 | 3}, S = {1,2 | 0 | 3}
    Congruence R{p4, {0, 0, 2, 3}};
    Congruence S{p4, {0, 1, 1, 3}};
    auto RS = relation_compose(R, S);
    auto SR = relation_compose(S, R);
    CHECK(RS.at(0, 2));
    CHECK_FALSE(SR.at(0, 2));
    CHECK_FALSE(relation_equal(RS, SR));
  }
}

TEST_CASE("congruence lattice helpers", "[constructions]") {
  auto klein = product(builtin_group_z2(), builtin_group_z2()).prod;
  auto cons = all_congruences(klein);
  for (const auto& a : cons)
    for (const auto& b : cons) {
      auto j = congruence_join(a, b);
      auto m = congruence_meet(a, b);
      CHECK(congruence_leq(a, j));
      CHECK(congruence_leq(b, j));
      CHECK(congruence_leq(m, a));
      CHECK(congruence_leq(m, b));
      // join and meet stay inside the enumerated lattice
      CHECK(std::any_of(cons.begin(), cons.end(),
                        [&](const Congruence& c) { return c.repr == j.repr; }));
      CHECK(std::any_of(cons.begin(), cons.end(),
                        [&](const Congruence& c) { return c.repr == m.repr; }));
    }
}

TEST_CASE("pairing into a product", "[constructions]") {
  auto z2 = builtin_group_z2();
  auto pd = product(z2, z2);
  auto p = pairing(identity_hom(z2), identity_hom(z2), pd);
  CHECK(p.map == pd.diagonal.map);
  CHECK(hom_equal(compose_homs(pd.proj1, p), identity_hom(z2)));
  auto p2 = pairing(identity_hom(z2), zero_hom(z2, z2), pd);
  CHECK(p2.map == pd.inj1.map);
}
