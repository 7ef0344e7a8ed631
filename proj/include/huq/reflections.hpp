#pragma once
//
// Reflections into commutative and abelian objects.
//
// Both reflections are quotients of the square X x X:
//
//   com: the coequaliser of the two axis injections i1, i2 : X -> X x X.
//        The quotient glues (x, 0) to (0, x); the unit is q o i1.
//   ab:  the cokernel of the diagonal d : X -> X x X, i.e. the coequaliser
//        of d and the zero map. The quotient glues (x, x) to (0, 0); the
//        unit is again q o i1. Defined for commutative X only.
//
// The constructions always run; their universal properties are theorems of
// well-behaved ambient slices (centralic, axis-generated quotient conditions)
// and are NOT assumed here. `verify_universal_arrow` certifies them against a
// finite test catalog, and `verify_product_preservation` decides whether the
// canonical comparison r(X x Y) -> r(X) x r(Y) is an isomorphism. In
// degenerate slices both can genuinely fail — e.g. over pointed sets the unit
// is not even surjective — and the checkers report that instead of hiding it.
//

#include <string>
#include <vector>

#include "centrality.hpp"
#include "constructions.hpp"
#include "report.hpp"

namespace huq {

enum class ReflectionKind { Com, Ab };

inline const char* to_string(ReflectionKind k) {
  return k == ReflectionKind::Com ? "com" : "ab";
}

struct ReflectionResult {
  AlgebraPtr source;
  AlgebraPtr reflected;
  Hom unit; // source -> reflected, the composite q o i1
  ReflectionKind kind = ReflectionKind::Com;
  // The construction site, kept so morphisms can be pushed through the
  // reflection later: square = source x source, quot.q = the quotient map.
  ProductData square;
  QuotientData quot;
};

// Universal commutative quotient candidate: coequalise the axis injections.
inline ReflectionResult com_reflection(const AlgebraPtr& X) {
  auto pd = product(X, X);
  auto ce = coequaliser(pd.inj1, pd.inj2);
  Hom unit = compose_homs(ce.quot.q, pd.inj1);
  return ReflectionResult{X, ce.quot.algebra, std::move(unit), ReflectionKind::Com,
                          std::move(pd), std::move(ce.quot)};
}

// Universal abelian quotient candidate: cokernel of the diagonal. Requires a
// commutative source; on internal monoids this is group completion, which is
// why non-group monoids can collapse drastically.
inline ReflectionResult ab_reflection(const AlgebraPtr& X) {
  if (!is_commutative_object(X))
    throw PreconditionError("ab_reflection: '" + X->name() +
                            "' is not a commutative object");
  auto pd = product(X, X);
  auto ce = coequaliser(pd.diagonal, zero_hom(X, pd.prod));
  Hom unit = compose_homs(ce.quot.q, pd.inj1);
  return ReflectionResult{X, ce.quot.algebra, std::move(unit), ReflectionKind::Ab,
                          std::move(pd), std::move(ce.quot)};
}

// The reflection of a morphism f : X -> Y is the unique r(f) with
// r(f) o q_X = q_Y o (f x f). It always exists: q_Y o (f x f) glues the
// defining pairs of q_X (axis pairs map to axis pairs, diagonal pairs to
// diagonal pairs), so the composite factors through the quotient.
inline Hom reflect_hom(const ReflectionResult& rx, const ReflectionResult& ry,
                       const Hom& f) {
  if (rx.kind != ry.kind)
    throw PreconditionError("reflect_hom: reflections are of different kinds");
  if (!algebra_equal(f.dom, rx.source) || !algebra_equal(f.cod, ry.source))
    throw PreconditionError(
        "reflect_hom: 'f' does not run between the reflected sources");
  std::vector<Index> fxf(rx.square.prod->size());
  for (Index p = 0; p < rx.square.prod->size(); ++p) {
    auto [a, b] = rx.square.unpair(p);
    fxf[p] = ry.square.pair(f.map[a], f.map[b]);
  }
  Hom through = compose_homs(ry.quot.q, Hom{rx.square.prod, ry.square.prod,
                                            std::move(fxf)});
  auto factored = factor_through_quotient(through, rx.quot);
  if (!factored)
    throw InternalConsistencyError(
        "reflect_hom: q_Y o (f x f) failed to factor through q_X");
  return *factored;
}

inline bool satisfies_object_class(const AlgebraPtr& T, ReflectionKind k) {
  return k == ReflectionKind::Com ? is_commutative_object(T)
                                  : is_abelian_object(T).abelian;
}

// Certify the unit as a universal arrow against a finite test catalog: for
// every test T of the requested object class (and the source's signature) and
// every hom h : source -> T, exactly one h' : reflected -> T satisfies
// h' o unit = h. Fails with the first (T, h) whose factorization count is
// not one.
inline CheckReport verify_universal_arrow(const ReflectionResult& res,
                                          ReflectionKind object_class,
                                          const std::vector<AlgebraPtr>& tests) {
  std::vector<std::string> inputs{res.source->name(), to_string(res.kind)};
  long long same_signature = 0, satisfying = 0, homs_checked = 0;
  std::string used;
  for (const auto& T : tests) {
    if (T->signature() != res.source->signature()) continue;
    ++same_signature;
    if (!satisfies_object_class(T, object_class)) continue;
    ++satisfying;
    if (!used.empty()) used += ", ";
    used += T->name();
    auto candidates = enumerate_homs(res.reflected, T);
    for (const auto& h : enumerate_homs(res.source, T)) {
      ++homs_checked;
      long long factorizations = 0;
      for (const auto& hp : candidates)
        if (hom_equal(compose_homs(hp, res.unit), h)) ++factorizations;
      if (factorizations != 1) {
        auto r = fail_report("universal-arrow", inputs,
                             json{{"T", T->name()},
                                  {"h", hom_to_json(h)},
                                  {"factorizations", factorizations}});
        r.stats["tests"] = static_cast<long long>(tests.size());
        r.stats["same_signature"] = same_signature;
        r.stats["satisfying"] = satisfying;
        r.stats["homs_checked"] = homs_checked;
        r.note = "every hom from the source must factor exactly once through "
                 "the unit";
        return r;
      }
    }
  }
  auto r = pass_report("universal-arrow", inputs);
  r.stats["tests"] = static_cast<long long>(tests.size());
  r.stats["same_signature"] = same_signature;
  r.stats["satisfying"] = satisfying;
  r.stats["homs_checked"] = homs_checked;
  r.note = used.empty() ? "no eligible tests of the requested class"
                        : "universal against tests: " + used;
  return r;
}

// Decide whether the com reflection preserves the binary product X x Y. The
// canonical comparison r(X x Y) -> r(X) x r(Y) is built twice:
//   (a) as the pairing of the reflected projections r(p1), r(p2);
//   (b) by factoring t : (XxY)x(XxY) -> r(X) x r(Y),
//       ((x,y),(x',y')) |-> (q_X(x,x'), q_Y(y,y')), through the coequaliser
//       unit (t glues the axis pairs because each q does).
// The two must agree; the comparison is surjective by construction (t is),
// so the verdict reduces to injectivity, i.e. the class counts matching.
inline CheckReport verify_product_preservation(const AlgebraPtr& X,
                                               const AlgebraPtr& Y) {
  auto pd = product(X, Y);
  auto rX = com_reflection(X);
  auto rY = com_reflection(Y);
  auto rXY = com_reflection(pd.prod);
  std::vector<std::string> inputs{X->name(), Y->name()};

  Hom rp1 = reflect_hom(rXY, rX, pd.proj1);
  Hom rp2 = reflect_hom(rXY, rY, pd.proj2);
  auto rpd = product(rX.reflected, rY.reflected);
  Hom comparison = pairing(rp1, rp2, rpd);

  std::vector<Index> tmap(rXY.square.prod->size());
  for (Index p = 0; p < rXY.square.prod->size(); ++p) {
    auto [u, v] = rXY.square.unpair(p);
    auto [x, y] = pd.unpair(u);
    auto [xp, yp] = pd.unpair(v);
    tmap[p] = rpd.pair(rX.quot.q.map[rX.square.pair(x, xp)],
                       rY.quot.q.map[rY.square.pair(y, yp)]);
  }
  Hom t{rXY.square.prod, rpd.prod, std::move(tmap)};
  auto refactored = factor_through_quotient(t, rXY.quot);
  if (!refactored)
    throw InternalConsistencyError(
        "verify_product_preservation: the comparison failed to factor through "
        "the coequaliser unit");

  long long left = rXY.reflected->size();
  long long right = rpd.prod->size();
  auto finish = [&](CheckReport r) {
    r.stats["reflected_product_size"] = left;
    r.stats["product_of_reflections_size"] = right;
    r.stats["square_size"] = rXY.square.prod->size();
    return r;
  };

  for (Index c = 0; c < rXY.reflected->size(); ++c) {
    if (comparison.map[c] != refactored->map[c]) {
      auto r = fail_report("product-preservation", inputs,
                           json{{"disagreement_at", c},
                                {"via_projections", comparison.map[c]},
                                {"via_factorization", refactored->map[c]}});
      r.note = "the two derivations of the comparison disagree";
      return finish(std::move(r));
    }
  }

  std::vector<Index> hit_by(rpd.prod->size(), -1);
  for (Index c = 0; c < rXY.reflected->size(); ++c) {
    Index image = comparison.map[c];
    if (hit_by[image] != -1) {
      auto r = fail_report("product-preservation", inputs,
                           json{{"u", hit_by[image]}, {"v", c}, {"image", image}});
      r.note = "comparison r(X x Y) -> r(X) x r(Y) is not injective";
      return finish(std::move(r));
    }
    hit_by[image] = c;
  }
  for (Index e = 0; e < rpd.prod->size(); ++e) {
    if (hit_by[e] == -1) {
      auto r = fail_report("product-preservation", inputs,
                           json{{"missing", e}});
      r.note = "comparison r(X x Y) -> r(X) x r(Y) is not surjective";
      return finish(std::move(r));
    }
  }

  auto r = pass_report("product-preservation", inputs);
  r.witness = json{{"comparison", comparison.map}};
  r.note = "pairing of the reflected projections agrees with the coequaliser "
           "factorization and is an isomorphism";
  return finish(std::move(r));
}

inline json reflection_to_json(const ReflectionResult& res) {
  return json{{"kind", to_string(res.kind)},
              {"source", res.source->name()},
              {"reflected", algebra_to_json(*res.reflected)},
              {"unit", res.unit.map},
              {"quotient_map", res.quot.q.map},
              {"classes", res.quot.theta.classes()}};
}

} // namespace huq
