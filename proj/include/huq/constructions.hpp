#pragma once
//
// Finite limit/colimit toolkit over pointed algebras: binary products with
// their injections, generated subalgebras, congruences (Mal'cev-style
// generation by unary-translation closure), quotients, coequalisers,
// pullbacks, and relation composition.
//
// Determinism contract: every function here orders its output canonically
// (congruence representatives are least class elements, congruence lists are
// sorted coarseness-last, carriers of constructed algebras are re-indexed so
// the class/member containing 0 is index 0 and the rest follow ascending).
//

#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "algebra.hpp"

namespace huq {

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

struct Congruence {
  AlgebraPtr on;
  std::vector<Index> repr; // repr[i] = least element of i's class

  bool related(Index a, Index b) const { return repr[a] == repr[b]; }
  int num_classes() const {
    int k = 0;
    for (size_t i = 0; i < repr.size(); ++i)
      if (repr[i] == static_cast<Index>(i)) ++k;
    return k;
  }
  // Classes ordered by least element; within a class, ascending.
  std::vector<std::vector<Index>> classes() const {
    std::vector<std::vector<Index>> out;
    std::vector<int> slot(repr.size(), -1);
    for (size_t i = 0; i < repr.size(); ++i) {
      if (repr[i] == static_cast<Index>(i)) {
        slot[i] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[slot[repr[i]]].push_back(static_cast<Index>(i));
    }
    return out;
  }
};

inline bool congruence_equal(const Congruence& a, const Congruence& b) {
  return a.repr == b.repr && algebra_equal(a.on, b.on);
}

inline Congruence equality_congruence(const AlgebraPtr& a) {
  std::vector<Index> repr(a->size());
  std::iota(repr.begin(), repr.end(), 0);
  return Congruence{a, std::move(repr)};
}

inline Congruence total_congruence(const AlgebraPtr& a) {
  return Congruence{a, std::vector<Index>(a->size(), 0)};
}

namespace detail {

// All unary polynomial translations of the basic operations: for every
// operation, every argument slot, and every assignment of constants to the
// remaining slots, the map z |-> op(c1, ..., z, ..., ck), materialized as a
// table of length n. A k-ary operation contributes k * n^(k-1) tables;
// nullaries contribute none.
inline std::vector<std::vector<Index>> unary_translations(const FiniteAlgebra& A) {
  std::vector<std::vector<Index>> out;
  int n = A.size();
  std::vector<Index> args;
  for (int op = 0; op < A.num_ops(); ++op) {
    int k = A.signature().ops[op].arity;
    if (k == 0) continue;
    long long fixings = int_pow(n, k - 1);
    for (int slot = 0; slot < k; ++slot) {
      for (long long c = 0; c < fixings; ++c) {
        std::vector<Index> tr(n);
        args.assign(k, 0);
        long long rest = c;
        for (int i = k - 1; i >= 0; --i) {
          if (i == slot) continue;
          args[i] = static_cast<Index>(rest % n);
          rest /= n;
        }
        for (Index z = 0; z < n; ++z) {
          args[slot] = z;
          tr[z] = A.apply(op, args);
        }
        out.push_back(std::move(tr));
      }
    }
  }
  return out;
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false if already joined. Roots keep the least element.
  bool unite(Index a, Index b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

} // namespace detail

// Smallest congruence containing the given pairs. Union-find closure: when a
// pair actually merges two classes, all unary-translation images of that pair
// are enqueued. Transitivity makes pair-level translation sufficient.
inline Congruence generate_congruence(const AlgebraPtr& A,
                                      const std::vector<std::pair<Index, Index>>& pairs,
                                      long long* merges_out = nullptr) {
  int n = A->size();
  detail::UnionFind uf(n);
  auto translations = detail::unary_translations(*A);
  std::deque<std::pair<Index, Index>> pending(pairs.begin(), pairs.end());
  long long merges = 0;
  while (!pending.empty()) {
    auto [a, b] = pending.front();
    pending.pop_front();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw PreconditionError("generate_congruence: pair element out of range");
    if (!uf.unite(a, b)) continue;
    ++merges;
    for (const auto& tr : translations) pending.emplace_back(tr[a], tr[b]);
  }
  std::vector<Index> repr(n);
  for (Index i = 0; i < n; ++i) repr[i] = uf.find(i);
  if (merges_out) *merges_out = merges;
  return Congruence{A, std::move(repr)};
}

inline Congruence kernel_congruence(const Hom& f) {
  int n = f.dom->size();
  std::vector<Index> repr(n);
  std::vector<Index> first(f.cod->size(), -1);
  for (Index i = 0; i < n; ++i) {
    if (first[f.map[i]] == -1) first[f.map[i]] = i;
    repr[i] = first[f.map[i]];
  }
  return Congruence{f.dom, std::move(repr)};
}

inline Congruence congruence_join(const Congruence& a, const Congruence& b) {
  std::vector<std::pair<Index, Index>> pairs;
  for (size_t i = 0; i < a.repr.size(); ++i) {
    pairs.emplace_back(static_cast<Index>(i), a.repr[i]);
    pairs.emplace_back(static_cast<Index>(i), b.repr[i]);
  }
  return generate_congruence(a.on, pairs);
}

// Meet is just the common refinement; no closure needed.
inline Congruence congruence_meet(const Congruence& a, const Congruence& b) {
  int n = static_cast<int>(a.repr.size());
  std::vector<Index> repr(n);
  std::map<std::pair<Index, Index>, Index> first;
  for (Index i = 0; i < n; ++i) {
    auto key = std::make_pair(a.repr[i], b.repr[i]);
    auto it = first.find(key);
    if (it == first.end()) { first[key] = i; repr[i] = i; }
    else repr[i] = it->second;
  }
  return Congruence{a.on, std::move(repr)};
}

inline bool congruence_leq(const Congruence& fine, const Congruence& coarse) {
  for (size_t i = 0; i < fine.repr.size(); ++i)
    if (coarse.repr[i] != coarse.repr[fine.repr[i]]) return false;
  return true;
}

// Every congruence of A: principal congruences closed under join. Throws
// CapExceeded when the carrier is larger than `carrier_cap` (the lattice can
// be astronomically large; the cap keeps requests honest). Output is sorted
// finest-first: by descending class count, then lexicographically.
// count_cap < 0: unlimited. Otherwise the enumeration throws as soon as it
// has materialized more than count_cap congruences (required reports the
// count reached, a lower bound for the true total).
inline std::vector<Congruence> all_congruences(const AlgebraPtr& A, int carrier_cap = 16,
                                               long long count_cap = -1) {
  if (A->size() > carrier_cap)
    throw CapExceeded("all_congruences: carrier size " + std::to_string(A->size()) +
                          " exceeds cap " + std::to_string(carrier_cap),
                      A->size());
  std::set<std::vector<Index>> seen;
  std::vector<Congruence> found;
  auto add = [&](Congruence c) {
    if (seen.insert(c.repr).second) {
      found.push_back(std::move(c));
      if (count_cap >= 0 && static_cast<long long>(found.size()) > count_cap)
        throw CapExceeded("all_congruences: more than " + std::to_string(count_cap) +
                              " congruences on '" + A->name() + "'",
                          static_cast<long long>(found.size()));
    }
  };
  add(equality_congruence(A));
  int n = A->size();
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      add(generate_congruence(A, {{a, b}}));
  // join-closure worklist
  size_t frontier_begin = 0;
  while (frontier_begin < found.size()) {
    size_t frontier_end = found.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i)
      for (size_t j = 0; j < frontier_end; ++j)
        add(congruence_join(found[i], found[j]));
    frontier_begin = frontier_end;
  }
  std::sort(found.begin(), found.end(), [](const Congruence& x, const Congruence& y) {
    int cx = x.num_classes(), cy = y.num_classes();
    if (cx != cy) return cx > cy;
    return x.repr < y.repr;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Quotients and coequalisers
// ---------------------------------------------------------------------------

struct QuotientData {
  AlgebraPtr algebra;
  Hom q;            // the canonical surjection
  Congruence theta; // kernel of q
};

// Carrier of the quotient: classes ordered by least element, so the class of
// 0 is index 0 and pointedness is preserved by construction.
inline QuotientData quotient(const AlgebraPtr& A, const Congruence& theta) {
  if (!algebra_equal(theta.on, A))
    throw PreconditionError("quotient: congruence lives on a different algebra");
  int n = A->size();
  // compatibility check: callers can hand-build Congruence values
  for (int op = 0; op < A->num_ops(); ++op) {
    int k = A->signature().ops[op].arity;
    long long tuples = int_pow(n, k);
    std::vector<Index> args(k), rargs(k);
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      for (int i = k - 1; i >= 0; --i) { args[i] = static_cast<Index>(rest % n); rest /= n; }
      for (int i = 0; i < k; ++i) rargs[i] = theta.repr[args[i]];
      if (theta.repr[A->apply(op, args)] != theta.repr[A->apply(op, rargs)])
        throw PreconditionError("quotient: partition is not a congruence of '" + A->name() + "'");
    }
  }
  std::vector<Index> class_index(n, -1);
  int k = 0;
  for (Index i = 0; i < n; ++i)
    if (theta.repr[i] == i) class_index[i] = k++;
  std::vector<Index> qmap(n);
  for (Index i = 0; i < n; ++i) qmap[i] = class_index[theta.repr[i]];
  std::vector<Index> rep_of(k);
  for (Index i = 0; i < n; ++i)
    if (theta.repr[i] == i) rep_of[class_index[i]] = i;

  std::vector<std::vector<Index>> tables;
  for (int op = 0; op < A->num_ops(); ++op) {
    int ar = A->signature().ops[op].arity;
    long long tuples = int_pow(k, ar);
    std::vector<Index> tbl(tuples);
    std::vector<Index> args(ar);
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      for (int i = ar - 1; i >= 0; --i) { args[i] = rep_of[rest % k]; rest /= k; }
      tbl[t] = qmap[A->apply(op, args)];
    }
    tables.push_back(std::move(tbl));
  }
  auto Q = make_algebra(A->name() + "/" + std::to_string(k), A->signature_ptr(), k,
                        std::move(tables));
  Hom q{A, Q, std::move(qmap)};
  return QuotientData{Q, std::move(q), theta};
}

struct CoequaliserData {
  Hom f, g; // the coequalised parallel pair
  QuotientData quot;
};

inline CoequaliserData coequaliser(const Hom& f, const Hom& g) {
  if (!algebra_equal(f.dom, g.dom) || !algebra_equal(f.cod, g.cod))
    throw PreconditionError("coequaliser: morphisms are not parallel");
  std::vector<std::pair<Index, Index>> pairs;
  for (Index s = 0; s < f.dom->size(); ++s) pairs.emplace_back(f.map[s], g.map[s]);
  auto theta = generate_congruence(f.cod, pairs);
  return CoequaliserData{f, g, quotient(f.cod, theta)};
}

// h factors through q iff ker q <= ker h; returns the unique factorization
// when it exists.
inline std::optional<Hom> factor_through_quotient(const Hom& h, const QuotientData& q) {
  if (!algebra_equal(h.dom, q.q.dom))
    throw PreconditionError("factor_through_quotient: domains differ");
  std::vector<Index> map(q.algebra->size(), -1);
  for (Index i = 0; i < h.dom->size(); ++i) {
    Index c = q.q.map[i];
    if (map[c] == -1) map[c] = h.map[i];
    else if (map[c] != h.map[i]) return std::nullopt;
  }
  return Hom{q.algebra, h.cod, std::move(map)};
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

struct ProductData {
  AlgebraPtr left, right, prod;
  Hom proj1, proj2; // prod -> left, prod -> right
  Hom inj1, inj2;   // left/right -> prod, the zero-padded axis injections
  // Only populated when left and right are table-identical (the twist is an
  // endomorphism of prod only then); otherwise their dom/cod stay null.
  Hom diagonal; // left -> prod, a |-> (a, a)
  Hom swap;     // prod -> prod, (a, b) |-> (b, a)

  Index pair(Index a, Index b) const { return a * right->size() + b; }
  std::pair<Index, Index> unpair(Index p) const {
    return {p / right->size(), p % right->size()};
  }
};

inline ProductData product(const AlgebraPtr& A, const AlgebraPtr& B) {
  if (A->signature() != B->signature())
    throw PreconditionError("product: algebras have different signatures");
  int n = A->size(), m = B->size(), nm = n * m;
  std::vector<std::vector<Index>> tables;
  for (int op = 0; op < A->num_ops(); ++op) {
    int k = A->signature().ops[op].arity;
    long long tuples = int_pow(nm, k);
    std::vector<Index> tbl(tuples);
    std::vector<Index> as(k), bs(k);
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      for (int i = k - 1; i >= 0; --i) {
        Index p = static_cast<Index>(rest % nm);
        rest /= nm;
        as[i] = p / m;
        bs[i] = p % m;
      }
      tbl[t] = A->apply(op, as) * m + B->apply(op, bs);
    }
    tables.push_back(std::move(tbl));
  }
  auto P = make_algebra("(" + A->name() + " x " + B->name() + ")", A->signature_ptr(), nm,
                        std::move(tables));
  ProductData pd;
  pd.left = A;
  pd.right = B;
  pd.prod = P;
  std::vector<Index> p1(nm), p2(nm);
  for (Index p = 0; p < nm; ++p) { p1[p] = p / m; p2[p] = p % m; }
  pd.proj1 = Hom{P, A, std::move(p1)};
  pd.proj2 = Hom{P, B, std::move(p2)};
  std::vector<Index> i1(n), i2(m);
  for (Index a = 0; a < n; ++a) i1[a] = a * m; // (a, 0)
  for (Index b = 0; b < m; ++b) i2[b] = b;     // (0, b)
  pd.inj1 = Hom{A, P, std::move(i1)};
  pd.inj2 = Hom{B, P, std::move(i2)};
  if (algebra_equal(A, B)) {
    std::vector<Index> d(n), sw(nm);
    for (Index a = 0; a < n; ++a) d[a] = a * m + a;
    for (Index p = 0; p < nm; ++p) sw[p] = (p % m) * m + (p / m);
    pd.diagonal = Hom{A, P, std::move(d)};
    pd.swap = Hom{P, P, std::move(sw)};
  }
  return pd;
}

// (f x g): dom.prod -> cod.prod for f: A -> C, g: B -> D.
struct HomProductData {
  ProductData dom, cod;
  Hom hom;
};

inline HomProductData hom_product(const Hom& f, const Hom& g) {
  HomProductData hp;
  hp.dom = product(f.dom, g.dom);
  hp.cod = product(f.cod, g.cod);
  std::vector<Index> map(hp.dom.prod->size());
  for (Index p = 0; p < hp.dom.prod->size(); ++p) {
    auto [a, b] = hp.dom.unpair(p);
    map[p] = hp.cod.pair(f.map[a], g.map[b]);
  }
  hp.hom = Hom{hp.dom.prod, hp.cod.prod, std::move(map)};
  return hp;
}

// <f, g>: S -> pd.prod for f: S -> A, g: S -> B with pd = A x B.
inline Hom pairing(const Hom& f, const Hom& g, const ProductData& pd) {
  if (!algebra_equal(f.dom, g.dom))
    throw PreconditionError("pairing: domains differ");
  if (!algebra_equal(f.cod, pd.left) || !algebra_equal(g.cod, pd.right))
    throw PreconditionError("pairing: codomains do not match the product");
  std::vector<Index> map(f.dom->size());
  for (Index s = 0; s < f.dom->size(); ++s) map[s] = pd.pair(f.map[s], g.map[s]);
  return Hom{f.dom, pd.prod, std::move(map)};
}

// ---------------------------------------------------------------------------
// Subalgebras and pullbacks
// ---------------------------------------------------------------------------

struct SubalgebraData {
  AlgebraPtr of;
  std::vector<Index> members; // sorted ascending; members[0] == 0 always
  AlgebraPtr sub;             // re-indexed copy
  Hom inclusion;              // sub -> of
};

namespace detail {

// Wraps an already-closed member set as a standalone algebra.
inline SubalgebraData wrap_subalgebra(const AlgebraPtr& A, std::vector<Index> members,
                                      const std::string& name) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  int sz = static_cast<int>(members.size());
  std::vector<Index> index_of(A->size(), -1);
  for (int i = 0; i < sz; ++i) index_of[members[i]] = i;
  std::vector<std::vector<Index>> tables;
  for (int op = 0; op < A->num_ops(); ++op) {
    int k = A->signature().ops[op].arity;
    long long tuples = int_pow(sz, k);
    std::vector<Index> tbl(tuples);
    std::vector<Index> args(k);
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      for (int i = k - 1; i >= 0; --i) { args[i] = members[rest % sz]; rest /= sz; }
      Index r = index_of[A->apply(op, args)];
      if (r == -1)
        throw PreconditionError("subalgebra member set is not closed under '" +
                                A->signature().ops[op].name + "'");
      tbl[t] = r;
    }
    tables.push_back(std::move(tbl));
  }
  auto S = make_algebra(name, A->signature_ptr(), sz, std::move(tables));
  Hom incl{S, A, members};
  return SubalgebraData{A, std::move(members), S, std::move(incl)};
}

} // namespace detail

// Least subalgebra containing the seeds (0 is always included).
inline SubalgebraData subalgebra_generate(const AlgebraPtr& A,
                                          const std::vector<Index>& seeds) {
  std::vector<char> in(A->size(), 0);
  in[0] = 1;
  for (Index s : seeds) {
    if (s < 0 || s >= A->size())
      throw PreconditionError("subalgebra_generate: seed out of range");
    in[s] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Index> cur;
    for (Index i = 0; i < A->size(); ++i)
      if (in[i]) cur.push_back(i);
    int sz = static_cast<int>(cur.size());
    for (int op = 0; op < A->num_ops(); ++op) {
      int k = A->signature().ops[op].arity;
      long long tuples = int_pow(sz, k);
      std::vector<Index> args(k);
      for (long long t = 0; t < tuples; ++t) {
        long long rest = t;
        for (int i = k - 1; i >= 0; --i) { args[i] = cur[rest % sz]; rest /= sz; }
        Index r = A->apply(op, args);
        if (!in[r]) { in[r] = 1; grew = true; }
      }
    }
  }
  std::vector<Index> members;
  for (Index i = 0; i < A->size(); ++i)
    if (in[i]) members.push_back(i);
  return detail::wrap_subalgebra(A, std::move(members), "sub(" + A->name() + ")");
}

struct PullbackData {
  ProductData pd;       // of dom(f) x dom(g)
  SubalgebraData apex;  // the equalizing members inside pd.prod
  Hom to_left, to_right;
};

inline PullbackData pullback(const Hom& f, const Hom& g) {
  if (!algebra_equal(f.cod, g.cod))
    throw PreconditionError("pullback: codomains differ");
  auto pd = product(f.dom, g.dom);
  std::vector<Index> members;
  for (Index p = 0; p < pd.prod->size(); ++p) {
    auto [a, b] = pd.unpair(p);
    if (f.map[a] == g.map[b]) members.push_back(p);
  }
  auto apex = detail::wrap_subalgebra(pd.prod, std::move(members),
                                      "pb(" + f.dom->name() + "," + g.dom->name() + ")");
  std::vector<Index> l(apex.sub->size()), r(apex.sub->size());
  for (int i = 0; i < apex.sub->size(); ++i) {
    auto [a, b] = pd.unpair(apex.members[i]);
    l[i] = a;
    r[i] = b;
  }
  PullbackData out;
  out.to_left = Hom{apex.sub, f.dom, std::move(l)};
  out.to_right = Hom{apex.sub, g.dom, std::move(r)};
  out.pd = std::move(pd);
  out.apex = std::move(apex);
  return out;
}

// ---------------------------------------------------------------------------
// Relation composition
// ---------------------------------------------------------------------------

struct BinaryRelation {
  int n = 0;
  std::vector<char> bits; // n*n, row-major

  bool at(Index a, Index b) const { return bits[a * n + b] != 0; }
  void set(Index a, Index b) { bits[a * n + b] = 1; }
};

inline BinaryRelation relation_of(const Congruence& c) {
  int n = static_cast<int>(c.repr.size());
  BinaryRelation r{n, std::vector<char>(static_cast<size_t>(n) * n, 0)};
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (c.repr[a] == c.repr[b]) r.set(a, b);
  return r;
}

// R o S in the diagrammatic order used by permutability checks:
// (a, c) is in relation_compose(R, S) iff exists b with a R b and b S c.
inline BinaryRelation relation_compose(const BinaryRelation& R, const BinaryRelation& S) {
  if (R.n != S.n) throw PreconditionError("relation_compose: carrier sizes differ");
  int n = R.n;
  BinaryRelation out{n, std::vector<char>(static_cast<size_t>(n) * n, 0)};
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (R.at(a, b))
        for (Index c = 0; c < n; ++c)
          if (S.at(b, c)) out.set(a, c);
  return out;
}

inline BinaryRelation relation_compose(const Congruence& R, const Congruence& S) {
  return relation_compose(relation_of(R), relation_of(S));
}

inline bool relation_equal(const BinaryRelation& a, const BinaryRelation& b) {
  return a.n == b.n && a.bits == b.bits;
}

inline bool relation_total(const BinaryRelation& r) {
  for (char c : r.bits)
    if (!c) return false;
  return true;
}

} // namespace huq
