#pragma once
// Cooperators and everything built on them.
//
// A cooperator for f: X -> Y and g: X' -> Y is a homomorphism
// rho: X x X' -> Y with rho(x, 0) = f(x) and rho(0, y) = g(y); f and g
// commute when one exists. f is central when it commutes with the identity
// of its codomain. A commutative object is one whose identity is central
// (the cooperator is then an internal commutative-monoid structure), and an
// abelian object is a commutative one whose identity is symmetrizable.
//
// When the pair (dom, cod) satisfies the centralic condition (see
// conditions.hpp), a central f has exactly one cooperator with any g, and it
// is given by the closed formula rho_{f,g}(x, y) = rho_f(x, g(y)) where
// rho_f cooperates f with the identity. That formula makes the central homs
// X -> Y a commutative monoid under f + g = rho_f . <1, g> which moreover
// acts on all homs X -> Y; z_monoid tabulates the whole structure and
// re-verifies every law exhaustively, treating any violation as an internal
// fault. Outside a centralic pair, cooperators need not be unique: the
// searches here still enumerate them all (deterministically, in
// lexicographic order of the table), but first-witness choices are exactly
// that — choices.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "conditions.hpp"
#include "constructions.hpp"
#include "report.hpp"

namespace huq {

// ---------------------------------------------------------------------------
// Cooperator search
// ---------------------------------------------------------------------------

// A certified cooperator: rho: product.prod -> f.cod restricting to f and g
// along the axis injections of the recorded product decomposition.
struct CooperatorWitness {
  Hom f, g;            // f: X -> Y, g: X' -> Y
  ProductData product; // X x X'
  Hom rho;             // product.prod -> Y
};

// All cooperators for (f, g), in lexicographic order of the table. The
// backtracking hom search is seeded with both axes pinned, so each result is
// a genuine homomorphism satisfying both defining triangles by construction.
inline std::vector<CooperatorWitness> find_cooperators(const Hom& f, const Hom& g,
                                                       long long* nodes_out = nullptr) {
  if (!algebra_equal(f.cod, g.cod))
    throw PreconditionError("find_cooperators: the two homs have different codomains");
  ProductData pd = product(f.dom, g.dom);
  std::vector<std::pair<Index, Index>> pins;
  for (Index a = 0; a < f.dom->size(); ++a) pins.emplace_back(pd.pair(a, 0), f.map[a]);
  for (Index b = 0; b < g.dom->size(); ++b) pins.emplace_back(pd.pair(0, b), g.map[b]);
  std::vector<Hom> rhos = enumerate_homs_pinned(pd.prod, f.cod, pins, nodes_out);
  std::vector<CooperatorWitness> out;
  out.reserve(rhos.size());
  for (Hom& r : rhos) out.push_back(CooperatorWitness{f, g, pd, std::move(r)});
  return out;
}

inline bool commutes(const Hom& f, const Hom& g) { return !find_cooperators(f, g).empty(); }

// First (lexicographically least) cooperator of f with the identity of its
// codomain, or nullopt when f is not central. In a centralic pair the
// cooperator is unique, so "first" is not a choice there.
inline std::optional<CooperatorWitness> is_central(const Hom& f) {
  auto ws = find_cooperators(f, identity_hom(f.cod));
  if (ws.empty()) return std::nullopt;
  return std::move(ws.front());
}

// ---------------------------------------------------------------------------
// The closed formula and the star operation
// ---------------------------------------------------------------------------

namespace central_detail {

inline bool is_identity_witness(const CooperatorWitness& w) {
  if (!algebra_equal(w.g.dom, w.g.cod)) return false;
  for (Index i = 0; i < w.g.dom->size(); ++i)
    if (w.g.map[i] != i) return false;
  return true;
}

} // namespace central_detail

// rho_{f,g} = rho_f . (1 x g) for rho_f the recorded cooperator of f with the
// identity and any g into the same codomain. The result cooperates (f, g); in
// a centralic pair it is the only hom that does.
inline CooperatorWitness cooperator_via_formula(const CooperatorWitness& rho_f, const Hom& g) {
  if (!central_detail::is_identity_witness(rho_f))
    throw PreconditionError(
        "cooperator_via_formula: witness must cooperate its hom with an identity");
  if (!algebra_equal(g.cod, rho_f.f.cod))
    throw PreconditionError("cooperator_via_formula: codomain differs from the witness's");
  HomProductData hp = hom_product(identity_hom(rho_f.f.dom), g); // X x X' -> X x Y
  Hom rho = compose_homs(rho_f.rho, hp.hom);
  CooperatorWitness out{rho_f.f, g, hp.dom, std::move(rho)};
  for (Index a = 0; a < out.f.dom->size(); ++a)
    if (out.rho.map[out.product.pair(a, 0)] != out.f.map[a])
      throw InternalConsistencyError(
          "cooperator_via_formula: table does not restrict to f on the first axis");
  for (Index b = 0; b < out.g.dom->size(); ++b)
    if (out.rho.map[out.product.pair(0, b)] != out.g.map[b])
      throw InternalConsistencyError(
          "cooperator_via_formula: table does not restrict to g on the second axis");
  return out;
}

// f + g for parallel homs f, g: X -> Y with f central:
// (f + g)(x) = rho_{f,g}(x, x). Everything is assembled from certified homs
// (formula cooperator, then the diagonal), so the sum is a hom by
// construction.
inline Hom star(const CooperatorWitness& rho_f, const Hom& g) {
  if (!algebra_equal(g.dom, rho_f.f.dom))
    throw PreconditionError("star: the two homs have different domains");
  CooperatorWitness w = cooperator_via_formula(rho_f, g);
  return compose_homs(w.rho, w.product.diagonal);
}

inline Hom star(const Hom& f, const Hom& g) {
  auto w = is_central(f);
  if (!w) throw PreconditionError("star: left operand is not central");
  return star(*w, g);
}

// ---------------------------------------------------------------------------
// The monoid of central homs
// ---------------------------------------------------------------------------

// Thrown by z_monoid when the ambient pair does not pass (or cannot be
// certified to pass) the centralic check; carries the full report.
struct NotCentralicError : Error {
  CheckReport report;
  explicit NotCentralicError(CheckReport r)
      : Error("z_monoid: ambient pair is not certified centralic: " + render_line(r)),
        report(std::move(r)) {}
};

// Z(X, Y) with its addition and its action on all homs X -> Y. Positions in
// `add` and the first index of `action` refer to the `central` list; values
// of `action` and the second index refer to the full `homs` list.
struct MonoidTable {
  AlgebraPtr X, Y;
  std::vector<Hom> homs;                      // every hom X -> Y, lexicographic
  std::vector<int> central;                   // positions in homs, ascending
  std::vector<CooperatorWitness> cooperators; // cooperator of each central hom with 1_Y
  int unit = 0;                               // position in central of the zero hom
  std::vector<std::vector<int>> add;          // central x central -> central
  std::vector<std::vector<int>> action;       // central x homs -> homs
};

namespace central_detail {

inline int hom_position(const std::vector<Hom>& homs, const Hom& h, const char* what) {
  auto it = std::lower_bound(homs.begin(), homs.end(), h.map,
                             [](const Hom& a, const std::vector<Index>& m) { return a.map < m; });
  if (it == homs.end() || it->map != h.map)
    throw InternalConsistencyError(std::string("z_monoid: ") + what +
                                   " is missing from the hom enumeration");
  return static_cast<int>(it - homs.begin());
}

} // namespace central_detail

// Tabulates Z(X, Y). Requires the pair to pass the centralic check; the
// construction then re-verifies, exhaustively, that cooperators with the
// identity are unique, that the closed formula agrees with the search on
// every (central, arbitrary) pair, and that addition and the action satisfy
// the commutative-monoid and action laws. Any failure is an internal fault:
// those properties are theorems over a centralic pair.
inline MonoidTable z_monoid(const AlgebraPtr& X, const AlgebraPtr& Y,
                            const ConditionCaps& caps = {}) {
  CheckReport ambient = centralic_pair_check(X, Y, caps);
  if (ambient.verdict != Verdict::Pass) throw NotCentralicError(std::move(ambient));

  MonoidTable t;
  t.X = X;
  t.Y = Y;
  t.homs = enumerate_homs(X, Y);
  Hom idY = identity_hom(Y);
  for (int k = 0; k < static_cast<int>(t.homs.size()); ++k) {
    auto ws = find_cooperators(t.homs[k], idY);
    if (ws.size() > 1)
      throw InternalConsistencyError(
          "z_monoid: a hom has several cooperators with the identity over a centralic pair");
    if (!ws.empty()) {
      t.central.push_back(k);
      t.cooperators.push_back(std::move(ws.front()));
    }
  }
  // The zero hom is lexicographically least, hence hom 0, and is always
  // central (the second projection cooperates it with the identity).
  if (t.central.empty() || t.central.front() != 0)
    throw InternalConsistencyError("z_monoid: the zero hom is not central");
  t.unit = 0;

  int nc = static_cast<int>(t.central.size());
  int nh = static_cast<int>(t.homs.size());
  auto central_position = [&](int hom_pos) {
    auto it = std::lower_bound(t.central.begin(), t.central.end(), hom_pos);
    if (it == t.central.end() || *it != hom_pos)
      throw InternalConsistencyError("z_monoid: a sum of central homs is not central");
    return static_cast<int>(it - t.central.begin());
  };

  t.action.assign(nc, std::vector<int>(nh, -1));
  for (int i = 0; i < nc; ++i) {
    for (int k = 0; k < nh; ++k) {
      CooperatorWitness w = cooperator_via_formula(t.cooperators[i], t.homs[k]);
      // The formula must reproduce exactly the searched cooperator set.
      auto searched = find_cooperators(t.homs[t.central[i]], t.homs[k]);
      if (searched.size() != 1 || searched.front().rho.map != w.rho.map)
        throw InternalConsistencyError(
            "z_monoid: cooperator search and the closed formula disagree");
      Hom sum = compose_homs(w.rho, w.product.diagonal);
      t.action[i][k] = central_detail::hom_position(t.homs, sum, "a computed sum");
    }
  }
  t.add.assign(nc, std::vector<int>(nc, -1));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) t.add[i][j] = central_position(t.action[i][t.central[j]]);

  for (int j = 0; j < nc; ++j)
    if (t.add[t.unit][j] != j || t.add[j][t.unit] != j)
      throw InternalConsistencyError("z_monoid: the zero hom is not a unit for +");
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (t.add[i][j] != t.add[j][i])
        throw InternalConsistencyError("z_monoid: + is not commutative");
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < nc; ++k)
        if (t.add[t.add[i][j]][k] != t.add[i][t.add[j][k]])
          throw InternalConsistencyError("z_monoid: + is not associative");
  for (int k = 0; k < nh; ++k)
    if (t.action[t.unit][k] != k)
      throw InternalConsistencyError("z_monoid: the zero hom does not act as identity");
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < nh; ++k)
        if (t.action[t.add[i][j]][k] != t.action[i][t.action[j][k]])
          throw InternalConsistencyError("z_monoid: the action is not compatible with +");
  return t;
}

// ---------------------------------------------------------------------------
// Symmetrizability
// ---------------------------------------------------------------------------

struct SymmetrizableResult {
  bool symmetrizable = false;
  std::optional<Hom> inverse; // a central g with f + g = 0, when one exists
};

// Decides whether the central hom recorded in `rho_f` has an additive
// inverse, by two independent routes that must agree:
//   (a) search every central g: X -> Y for one with f + g = 0;
//   (b) test whether (x, y) |-> (x, rho_f(x, y)) permutes X x Y.
// A disagreement is reported as an internal fault, since the two
// characterisations are provably equivalent.
inline SymmetrizableResult is_symmetrizable(const CooperatorWitness& rho_f) {
  if (!central_detail::is_identity_witness(rho_f))
    throw PreconditionError("is_symmetrizable: witness must cooperate its hom with an identity");
  const AlgebraPtr& X = rho_f.f.dom;
  const AlgebraPtr& Y = rho_f.f.cod;

  SymmetrizableResult res;
  for (const Hom& g : enumerate_homs(X, Y)) {
    if (!is_central(g)) continue;
    Hom sum = star(rho_f, g);
    if (std::all_of(sum.map.begin(), sum.map.end(), [](Index v) { return v == 0; })) {
      res.inverse = g;
      break;
    }
  }

  const ProductData& pd = rho_f.product;
  std::vector<char> seen(pd.prod->size(), 0);
  bool bijective = true;
  for (Index p = 0; p < pd.prod->size(); ++p) {
    Index image = pd.pair(pd.unpair(p).first, rho_f.rho.map[p]);
    if (seen[image]) { bijective = false; break; }
    seen[image] = 1;
  }

  if (res.inverse.has_value() != bijective)
    throw InternalConsistencyError(
        "is_symmetrizable: the inverse search and the twist-bijection test disagree on hom " +
        json(rho_f.f.map).dump() + " (search: " + (res.inverse ? "inverse found" : "none") +
        ", twist: " + (bijective ? "bijective" : "not bijective") + ")");
  res.symmetrizable = bijective;
  return res;
}

inline SymmetrizableResult is_symmetrizable(const Hom& f) {
  auto w = is_central(f);
  if (!w) throw PreconditionError("is_symmetrizable: hom is not central");
  return is_symmetrizable(*w);
}

// ---------------------------------------------------------------------------
// Commutative and abelian objects
// ---------------------------------------------------------------------------

// All cooperators of the identity of X with itself — equivalently, all
// internal unitary magma structures on X. Over a centralic pair (X, X) there
// is at most one.
inline std::vector<CooperatorWitness> commutative_witnesses(const AlgebraPtr& X) {
  Hom id = identity_hom(X);
  return find_cooperators(id, id);
}

inline std::vector<Hom> commutative_structures(const AlgebraPtr& X) {
  std::vector<Hom> out;
  for (auto& w : commutative_witnesses(X)) out.push_back(std::move(w.rho));
  return out;
}

inline bool is_commutative_object(const AlgebraPtr& X) {
  return !commutative_witnesses(X).empty();
}

// Checks that rho: X x X -> X is an internal commutative monoid structure:
// unit laws, associativity, commutativity, each verified element-wise with
// the lexicographically least counterexample reported. rho itself must be a
// homomorphism out of the square of X; that much is a precondition.
inline CheckReport verify_internal_monoid(const AlgebraPtr& X, const Hom& rho) {
  ProductData pd = product(X, X);
  if (!algebra_equal(rho.dom, pd.prod) || !algebra_equal(rho.cod, X))
    throw PreconditionError("verify_internal_monoid: rho must map X x X to X");
  if (hom_violation(*rho.dom, *rho.cod, rho.map))
    throw PreconditionError("verify_internal_monoid: rho is not a homomorphism");

  const int n = X->size();
  auto m = [&](Index a, Index b) { return rho.map[pd.pair(a, b)]; };
  long long equations = 0;
  auto fail = [&](const char* law, json bind) {
    bind["law"] = law;
    CheckReport r = fail_report("internal-monoid", {X->name()}, std::move(bind));
    r.witness = hom_to_json(rho);
    r.stats["equations_checked"] = equations;
    return r;
  };
  for (Index x = 0; x < n; ++x) {
    ++equations;
    if (m(x, 0) != x) return fail("right-unit", json{{"x", x}});
  }
  for (Index x = 0; x < n; ++x) {
    ++equations;
    if (m(0, x) != x) return fail("left-unit", json{{"x", x}});
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        ++equations;
        if (m(m(x, y), z) != m(x, m(y, z)))
          return fail("associativity", json{{"x", x}, {"y", y}, {"z", z}});
      }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      ++equations;
      if (m(x, y) != m(y, x)) return fail("commutativity", json{{"x", x}, {"y", y}});
    }
  CheckReport r = pass_report("internal-monoid", {X->name()});
  r.witness = hom_to_json(rho);
  r.stats["equations_checked"] = equations;
  r.note = "unit, associativity and commutativity all hold";
  return r;
}

struct AbelianResult {
  bool abelian = false;
  std::optional<Hom> structure; // the internal addition X x X -> X examined
  std::optional<Hom> inverse;   // the inverse-assigning endomorphism
};

// X is abelian when it is commutative and its identity is symmetrizable.
// The first magma structure (unique over a centralic pair) is examined; when
// the verdict is positive the full internal-abelian-group laws — monoid laws
// plus rho(x, inverse(x)) = 0 — are re-verified, and a violation is treated
// as an internal fault.
inline AbelianResult is_abelian_object(const AlgebraPtr& X) {
  auto ws = commutative_witnesses(X);
  if (ws.empty()) return {};
  const CooperatorWitness& w = ws.front();
  AbelianResult res;
  res.structure = w.rho;
  SymmetrizableResult sym = is_symmetrizable(w);
  if (!sym.symmetrizable) return res;
  CheckReport laws = verify_internal_monoid(X, w.rho);
  if (laws.verdict != Verdict::Pass)
    throw InternalConsistencyError(
        "is_abelian_object: the magma structure of a symmetrizable identity fails the "
        "monoid laws: " + render_line(laws));
  for (Index x = 0; x < X->size(); ++x)
    if (w.rho.map[w.product.pair(x, sym.inverse->map[x])] != 0)
      throw InternalConsistencyError(
          "is_abelian_object: the found inverse does not invert element " + std::to_string(x));
  res.abelian = true;
  res.inverse = sym.inverse;
  return res;
}

} // namespace huq
