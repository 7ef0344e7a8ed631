#pragma once
//
// Built-in algebra catalog. These are the fixed fixtures every check and test
// runs against. Algebras that are meant to have hom-sets between each other
// share a signature object:
//
//   {add, zero}   group-z2, monoid-trunc3   (the "additive" slice)
//   {zero}        pset2, trivial            (bare pointed sets)
//   {meet, join, zero} / {or, zero} / {mul, zero}   singleton slices
//

#include <functional>
#include <map>

#include "algebra.hpp"

namespace huq {

namespace catalog_detail {

inline const SignaturePtr& sig_add() {
  static SignaturePtr s = make_signature({{"add", 2}, {"zero", 0}});
  return s;
}
inline const SignaturePtr& sig_pset() {
  static SignaturePtr s = make_signature({{"zero", 0}});
  return s;
}
inline const SignaturePtr& sig_lattice() {
  static SignaturePtr s = make_signature({{"meet", 2}, {"join", 2}, {"zero", 0}});
  return s;
}
inline const SignaturePtr& sig_or() {
  static SignaturePtr s = make_signature({{"or", 2}, {"zero", 0}});
  return s;
}
inline const SignaturePtr& sig_mul() {
  static SignaturePtr s = make_signature({{"mul", 2}, {"zero", 0}});
  return s;
}

} // namespace catalog_detail

// Two-element lattice: meet and join on {0, 1}.
inline AlgebraPtr builtin_lattice2() {
  static AlgebraPtr a = make_algebra("lattice2", catalog_detail::sig_lattice(), 2,
                                     {{0, 0, 0, 1}, {0, 1, 1, 1}, {0}});
  return a;
}

// Z/2 under xor.
inline AlgebraPtr builtin_group_z2() {
  static AlgebraPtr a =
      make_algebra("group-z2", catalog_detail::sig_add(), 2, {{0, 1, 1, 0}, {0}});
  return a;
}

// Two-element pointed set, no structure beyond the point.
inline AlgebraPtr builtin_pset2() {
  static AlgebraPtr a = make_algebra("pset2", catalog_detail::sig_pset(), 2, {{0}});
  return a;
}

// Two-element join-semilattice monoid ({0,1}, or).
inline AlgebraPtr builtin_monoid_or() {
  static AlgebraPtr a =
      make_algebra("monoid-or", catalog_detail::sig_or(), 2, {{0, 1, 1, 1}, {0}});
  return a;
}

// Truncated addition on {0,1,2}: x + y capped at 2.
inline AlgebraPtr builtin_monoid_trunc3() {
  static AlgebraPtr a = make_algebra("monoid-trunc3", catalog_detail::sig_add(), 3,
                                     {{0, 1, 2, 1, 2, 2, 2, 2, 2}, {0}});
  return a;
}

// Left-zero semigroup {1,2} with adjoined unit 0: x*y = x for x,y nonzero.
inline AlgebraPtr builtin_monoid_leftzero3() {
  static AlgebraPtr a = make_algebra("monoid-leftzero3", catalog_detail::sig_mul(), 3,
                                     {{0, 1, 2, 1, 1, 1, 2, 2, 2}, {0}});
  return a;
}

// One-element algebra in the pointed-set signature.
inline AlgebraPtr builtin_trivial() {
  static AlgebraPtr a = make_algebra("trivial", catalog_detail::sig_pset(), 1, {{0}});
  return a;
}

inline const std::vector<std::string>& builtin_names() {
  static std::vector<std::string> names = {
      "lattice2",          "group-z2",      "pset2",  "monoid-or",
      "monoid-trunc3",     "monoid-leftzero3", "trivial"};
  return names;
}

inline AlgebraPtr builtin(const std::string& name) {
  static const std::map<std::string, std::function<AlgebraPtr()>> table = {
      {"lattice2", builtin_lattice2},
      {"group-z2", builtin_group_z2},
      {"pset2", builtin_pset2},
      {"monoid-or", builtin_monoid_or},
      {"monoid-trunc3", builtin_monoid_trunc3},
      {"monoid-leftzero3", builtin_monoid_leftzero3},
      {"trivial", builtin_trivial}};
  auto it = table.find(name);
  if (it == table.end()) throw ValidationError("unknown catalog algebra '" + name + "'");
  return it->second();
}

inline std::vector<AlgebraPtr> all_builtins() {
  std::vector<AlgebraPtr> out;
  for (const auto& n : builtin_names()) out.push_back(builtin(n));
  return out;
}

// Built-ins sharing a's signature, in catalog order. Every check that needs a
// set of test objects "from the catalog" draws from here.
inline std::vector<AlgebraPtr> slice_members(const FiniteAlgebra& a) {
  std::vector<AlgebraPtr> out;
  for (const auto& b : all_builtins())
    if (b->signature() == a.signature()) out.push_back(b);
  return out;
}

// The one-element algebra in an arbitrary signature (all tables constantly 0).
inline AlgebraPtr make_trivial(const SignaturePtr& sig, const std::string& name = "trivial") {
  std::vector<std::vector<Index>> tables;
  for (const auto& op : sig->ops) tables.emplace_back(int_pow(1, op.arity), 0);
  return make_algebra(name, sig, 1, std::move(tables));
}

} // namespace huq
