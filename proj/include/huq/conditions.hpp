#pragma once
//
// Structural condition checkers. Each decides one property of a finite
// pointed algebra (or a pair of them) and returns a CheckReport whose fail
// verdicts carry a machine-replayable counterexample.
//
// Quantifiers over "all congruences" are made finite in two ways:
//  - centralic / local-centralic reduce to principal congruences: any
//    congruence relating the hypothesis pair contains the principal
//    congruence that pair generates, so the implication is worst-case there;
//  - condition (T) / condition-S / gumm / factor-permutable enumerate the
//    full congruence lattice, refusing (never guessing) beyond their caps.
//
// Every scan runs in a fixed ascending order, and the first violation found
// is the one reported, so verdicts and counterexamples are deterministic.
//

#include "report.hpp"

namespace huq {

struct ConditionCaps {
  int congruence_carrier_cap = 16;     // all_congruences carrier bound
  long long congruence_count_cap = 4096;
  int shifting_carrier_cap = 9;        // gumm / factor-permutable carrier bound
  long long work_cap = 100'000'000;    // quantifier-scan node budget
};

namespace cond_detail {

inline void require_same_signature(const AlgebraPtr& X, const AlgebraPtr& Y,
                                   const char* who) {
  if (!(X->signature() == Y->signature()))
    throw PreconditionError(std::string(who) + ": '" + X->name() + "' and '" +
                            Y->name() + "' have different signatures");
}

// |base|^exp, clamped so callers can compare against a budget without overflow.
inline long long clamped_pow(long long base, int exp, long long clamp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > clamp / std::max<long long>(base, 1)) return clamp + 1;
    r *= base;
  }
  return r;
}

} // namespace cond_detail

// ---------------------------------------------------------------------------
// Centralic pairs
// ---------------------------------------------------------------------------
//
// X, Y of one signature. Required: for every congruence Θ on X×Y and all
// x, x' in X, y in Y: (x,0) Θ (x',0) implies (x,y) Θ (x',y). Reduction: any Θ
// relating (x,0) to (x',0) contains Cg((x,0),(x',0)), so verifying the
// implication at the principal congruence verifies it at every congruence.

inline CheckReport centralic_pair_check(const AlgebraPtr& X, const AlgebraPtr& Y,
                                        const ConditionCaps& caps = {}) {
  cond_detail::require_same_signature(X, Y, "centralic_pair_check");
  std::vector<std::string> inputs{X->name(), Y->name()};
  const char* reduction =
      "a congruence relating (x,0) to (x',0) contains Cg((x,0),(x',0)); "
      "checking the principal congruence decides all of them";

  long long nx = X->size(), ny = Y->size(), np = nx * ny;
  long long xpairs = nx * (nx - 1) / 2;
  if (xpairs * np * np > caps.work_cap) {
    auto r = refused_report("centralic", inputs,
                            "estimated work " + std::to_string(xpairs) + "*" +
                                std::to_string(np * np) + " exceeds budget " +
                                std::to_string(caps.work_cap));
    r.stats["required"] = xpairs * np;
    return r;
  }

  auto pd = product(X, Y);
  long long principals = 0, triples = 0;
  for (Index x = 1; x < X->size(); ++x) {
    for (Index xp = 0; xp < x; ++xp) {
      auto theta = generate_congruence(pd.prod, {{pd.pair(x, 0), pd.pair(xp, 0)}});
      ++principals;
      for (Index y = 0; y < Y->size(); ++y) {
        ++triples;
        if (!theta.related(pd.pair(x, y), pd.pair(xp, y))) {
          auto r = fail_report("centralic", inputs,
                               json{{"x", x},
                                    {"xp", xp},
                                    {"y", y},
                                    {"theta", congruence_to_json(theta)}});
          r.stats["principal_congruences"] = principals;
          r.stats["triples_checked"] = triples;
          r.stats["product_size"] = np;
          r.note = reduction;
          return r;
        }
      }
    }
  }
  auto r = pass_report("centralic", inputs);
  r.stats["principal_congruences"] = principals;
  r.stats["triples_checked"] = triples;
  r.stats["product_size"] = np;
  r.note = reduction;
  return r;
}

// ---------------------------------------------------------------------------
// Unital / weakly unital pairs
// ---------------------------------------------------------------------------

// Axis injections jointly strongly epimorphic: in a variety slice this is
// exactly "the axis images generate X×Y".
inline CheckReport unital_check(const AlgebraPtr& X, const AlgebraPtr& Y) {
  cond_detail::require_same_signature(X, Y, "unital_check");
  std::vector<std::string> inputs{X->name(), Y->name()};
  auto pd = product(X, Y);
  std::vector<Index> seeds;
  for (Index a = 0; a < X->size(); ++a) seeds.push_back(pd.pair(a, 0));
  for (Index b = 0; b < Y->size(); ++b) seeds.push_back(pd.pair(0, b));
  auto sd = subalgebra_generate(pd.prod, seeds);
  long long generated = static_cast<long long>(sd.members.size());
  if (generated == pd.prod->size()) {
    auto r = pass_report("unital", inputs);
    r.stats["generated_size"] = generated;
    r.stats["product_size"] = pd.prod->size();
    r.note = "axis images generate the product";
    return r;
  }
  // least missing element
  Index missing = 0;
  {
    std::vector<char> in(pd.prod->size(), 0);
    for (Index m : sd.members) in[m] = 1;
    while (in[missing]) ++missing;
  }
  auto [ma, mb] = pd.unpair(missing);
  auto r = fail_report("unital", inputs,
                       json{{"missing", json::array({ma, mb})},
                            {"generated", sd.members}});
  r.stats["generated_size"] = generated;
  r.stats["product_size"] = pd.prod->size();
  return r;
}

// Axis injections jointly epimorphic w.r.t. the test objects: no two distinct
// homs X×Y -> Z may agree on both axes. Certified against the listed test
// objects only.
inline CheckReport weakly_unital_check(const AlgebraPtr& X, const AlgebraPtr& Y,
                                       const std::vector<AlgebraPtr>& tests,
                                       const ConditionCaps& caps = {}) {
  cond_detail::require_same_signature(X, Y, "weakly_unital_check");
  std::vector<std::string> inputs{X->name(), Y->name()};
  std::string testnames;
  for (size_t i = 0; i < tests.size(); ++i)
    testnames += (i ? "," : "") + tests[i]->name();

  auto pd = product(X, Y);
  long long homs = 0;
  for (const auto& Z : tests) {
    cond_detail::require_same_signature(X, Z, "weakly_unital_check");
    long long bound =
        cond_detail::clamped_pow(Z->size(), pd.prod->size() - 1, caps.work_cap);
    if (bound > caps.work_cap) {
      auto r = refused_report("weakly-unital", inputs,
                              "hom enumeration into '" + Z->name() +
                                  "' may exceed budget " + std::to_string(caps.work_cap));
      r.stats["required"] = bound;
      return r;
    }
    // axis signature = values on (a,0) and (0,b); two homs sharing it violate
    std::map<std::vector<Index>, std::vector<Index>> by_axes;
    for (const auto& h : enumerate_homs(pd.prod, Z)) {
      ++homs;
      std::vector<Index> key;
      for (Index a = 0; a < X->size(); ++a) key.push_back(h.map[pd.pair(a, 0)]);
      for (Index b = 0; b < Y->size(); ++b) key.push_back(h.map[pd.pair(0, b)]);
      auto [it, fresh] = by_axes.emplace(std::move(key), h.map);
      if (!fresh) {
        auto r = fail_report("weakly-unital", inputs,
                             json{{"test", Z->name()},
                                  {"h", it->second},
                                  {"k", h.map}});
        r.stats["homs"] = homs;
        r.stats["tests"] = static_cast<long long>(tests.size());
        r.note = "tests: " + testnames;
        return r;
      }
    }
  }
  auto r = pass_report("weakly-unital", inputs);
  r.stats["homs"] = homs;
  r.stats["tests"] = static_cast<long long>(tests.size());
  r.note = "certified against tests: " + testnames;
  return r;
}

// ---------------------------------------------------------------------------
// Congruence-shifting conditions
// ---------------------------------------------------------------------------

// Shifting lemma instance: for congruences R, S, T with R∧S ≤ T, whenever
// (x,y),(w,z) ∈ R, (y,z),(x,w) ∈ S and (y,z) ∈ T, then (x,w) ∈ T.
inline CheckReport gumm_shifting_check(const AlgebraPtr& A,
                                       const ConditionCaps& caps = {}) {
  std::vector<std::string> inputs{A->name()};
  int n = A->size();
  if (n > caps.shifting_carrier_cap) {
    auto r = refused_report("gumm", inputs,
                            "carrier " + std::to_string(n) + " exceeds shifting cap " +
                                std::to_string(caps.shifting_carrier_cap));
    r.stats["required"] = n;
    return r;
  }
  std::vector<Congruence> congs;
  try {
    congs = all_congruences(A, caps.congruence_carrier_cap, caps.congruence_count_cap);
  } catch (const CapExceeded& e) {
    auto r = refused_report("gumm", inputs, e.what());
    r.stats["required"] = e.required;
    return r;
  }
  long long c = static_cast<long long>(congs.size());
  if (c * c * c > caps.work_cap) {
    auto r = refused_report("gumm", inputs,
                            std::to_string(c) + "^3 congruence triples exceed budget " +
                                std::to_string(caps.work_cap));
    r.stats["required"] = c * c * c;
    return r;
  }

  long long triples = 0, work = 0;
  for (const auto& R : congs) {
    for (const auto& S : congs) {
      auto meetRS = congruence_meet(R, S);
      for (const auto& T : congs) {
        if (!congruence_leq(meetRS, T)) continue;
        ++triples;
        for (Index x = 0; x < n; ++x) {
          for (Index y = 0; y < n; ++y) {
            if (!R.related(x, y)) continue;
            for (Index z = 0; z < n; ++z) {
              if (!S.related(y, z) || !T.related(y, z)) continue;
              for (Index w = 0; w < n; ++w) {
                if (++work > caps.work_cap) {
                  auto r = refused_report("gumm", inputs,
                                          "scan exceeded work budget " +
                                              std::to_string(caps.work_cap));
                  r.stats["congruences"] = c;
                  r.stats["required"] = work;
                  return r;
                }
                if (!S.related(x, w) || !R.related(w, z)) continue;
                if (!T.related(x, w)) {
                  auto r = fail_report("gumm", inputs,
                                       json{{"R", congruence_to_json(R)},
                                            {"S", congruence_to_json(S)},
                                            {"T", congruence_to_json(T)},
                                            {"x", x},
                                            {"y", y},
                                            {"z", z},
                                            {"w", w}});
                  r.stats["congruences"] = c;
                  r.stats["triples"] = triples;
                  return r;
                }
              }
            }
          }
        }
      }
    }
  }
  auto r = pass_report("gumm", inputs);
  r.stats["congruences"] = c;
  r.stats["triples"] = triples;
  r.note = "all admissible congruence triples satisfy the shifting implication";
  return r;
}

// Factor congruences (members of direct-decomposition pairs) must permute
// with every congruence.
inline CheckReport factor_permutable_check(const AlgebraPtr& A,
                                           const ConditionCaps& caps = {}) {
  std::vector<std::string> inputs{A->name()};
  int n = A->size();
  if (n > caps.shifting_carrier_cap) {
    auto r = refused_report("factor-permutable", inputs,
                            "carrier " + std::to_string(n) + " exceeds shifting cap " +
                                std::to_string(caps.shifting_carrier_cap));
    r.stats["required"] = n;
    return r;
  }
  std::vector<Congruence> congs;
  try {
    congs = all_congruences(A, caps.congruence_carrier_cap, caps.congruence_count_cap);
  } catch (const CapExceeded& e) {
    auto r = refused_report("factor-permutable", inputs, e.what());
    r.stats["required"] = e.required;
    return r;
  }
  long long c = static_cast<long long>(congs.size());
  if (c * c * (long long)n * n * n > caps.work_cap) {
    auto r = refused_report("factor-permutable", inputs,
                            std::to_string(c) + "^2 congruence pairs exceed budget " +
                                std::to_string(caps.work_cap));
    r.stats["required"] = c * c * n * n * n;
    return r;
  }

  auto equality = equality_congruence(A);
  std::vector<BinaryRelation> rels;
  rels.reserve(congs.size());
  for (const auto& cg : congs) rels.push_back(relation_of(cg));

  // partner[i] = least j such that (congs[i], congs[j]) directly decomposes A
  std::vector<int> partner(congs.size(), -1);
  for (size_t i = 0; i < congs.size(); ++i) {
    for (size_t j = 0; j < congs.size(); ++j) {
      if (!congruence_equal(congruence_meet(congs[i], congs[j]), equality)) continue;
      auto ij = relation_compose(rels[i], rels[j]);
      auto ji = relation_compose(rels[j], rels[i]);
      if (!relation_equal(ij, ji) || !relation_total(ij)) continue;
      partner[i] = static_cast<int>(j);
      break;
    }
  }

  long long members = 0, pairs = 0;
  for (size_t i = 0; i < congs.size(); ++i) {
    if (partner[i] < 0) continue;
    ++members;
    for (size_t e = 0; e < congs.size(); ++e) {
      ++pairs;
      auto te = relation_compose(rels[i], rels[e]);
      auto et = relation_compose(rels[e], rels[i]);
      if (relation_equal(te, et)) continue;
      // least (a, c) present in exactly one composite, row-major
      for (Index a = 0; a < n; ++a) {
        for (Index cc = 0; cc < n; ++cc) {
          bool in_te = te.bits[a * n + cc], in_et = et.bits[a * n + cc];
          if (in_te == in_et) continue;
          auto r = fail_report("factor-permutable", inputs,
                               json{{"theta", congruence_to_json(congs[i])},
                                    {"partner", congruence_to_json(congs[partner[i]])},
                                    {"E", congruence_to_json(congs[e])},
                                    {"a", a},
                                    {"c", cc},
                                    {"witness_side", in_te ? "theta-then-E" : "E-then-theta"}});
          r.stats["congruences"] = c;
          r.stats["factor_members"] = members;
          r.stats["pairs_checked"] = pairs;
          return r;
        }
      }
    }
  }
  auto r = pass_report("factor-permutable", inputs);
  r.stats["congruences"] = c;
  r.stats["factor_members"] = members;
  r.stats["pairs_checked"] = pairs;
  r.note = "every factor congruence permutes with every congruence";
  return r;
}

// ---------------------------------------------------------------------------
// Conditions (T) and S on X*X
// ---------------------------------------------------------------------------

namespace cond_detail {

// Congruences on X*X whose quotient identifies the two axis injections,
// i.e. q∘i1 = q∘i2 — the finite stand-ins for regular epis out of X*X
// coequalising the axes.
struct AxisQuotient {
  Congruence theta;
  QuotientData quot;
  Hom f; // q ∘ i1
};

struct AxisQuotientScan {
  std::vector<AxisQuotient> qualifying;
  long long congruences = 0;
};

inline AxisQuotientScan axis_quotients(const AlgebraPtr& X, const ProductData& pd,
                                       const ConditionCaps& caps) {
  AxisQuotientScan out;
  auto congs = all_congruences(pd.prod, caps.congruence_carrier_cap,
                               caps.congruence_count_cap);
  out.congruences = static_cast<long long>(congs.size());
  for (auto& theta : congs) {
    bool qualifies = true;
    for (Index x = 0; x < X->size() && qualifies; ++x)
      qualifies = theta.related(pd.inj1.map[x], pd.inj2.map[x]);
    if (!qualifies) continue;
    auto qd = quotient(pd.prod, theta);
    Hom f = compose_homs(qd.q, pd.inj1);
    out.qualifying.push_back(AxisQuotient{std::move(theta), std::move(qd), std::move(f)});
  }
  return out;
}

} // namespace cond_detail

// Condition (T): whenever a quotient q of X*X satisfies q∘i1 = q∘i2, the
// composite q∘i1 is surjective.
inline CheckReport condition_T_check(const AlgebraPtr& X,
                                     const ConditionCaps& caps = {}) {
  std::vector<std::string> inputs{X->name()};
  auto pd = product(X, X);
  if (pd.prod->size() > caps.congruence_carrier_cap) {
    auto r = refused_report("condition-T", inputs,
                            "carrier " + std::to_string(pd.prod->size()) +
                                " of X*X exceeds congruence cap " +
                                std::to_string(caps.congruence_carrier_cap));
    r.stats["required"] = pd.prod->size();
    return r;
  }
  cond_detail::AxisQuotientScan scan;
  try {
    scan = cond_detail::axis_quotients(X, pd, caps);
  } catch (const CapExceeded& e) {
    auto r = refused_report("condition-T", inputs, e.what());
    r.stats["required"] = e.required;
    return r;
  }
  for (const auto& aq : scan.qualifying) {
    auto img = hom_image(aq.f);
    if (img.surjective) continue;
    // least element of X*X whose class is missed by q∘i1
    std::vector<char> hit(aq.quot.algebra->size(), 0);
    for (Index v : img.members) hit[v] = 1;
    Index missing = 0;
    while (hit[aq.quot.q.map[missing]]) ++missing;
    auto [ma, mb] = pd.unpair(missing);
    auto r = fail_report("condition-T", inputs,
                         json{{"theta", congruence_to_json(aq.theta)},
                              {"missing", json::array({ma, mb})},
                              {"image_size", static_cast<long long>(img.members.size())},
                              {"quotient_size", aq.quot.algebra->size()}});
    r.stats["congruences"] = scan.congruences;
    r.stats["qualifying"] = static_cast<long long>(scan.qualifying.size());
    return r;
  }
  auto r = pass_report("condition-T", inputs);
  r.stats["congruences"] = scan.congruences;
  r.stats["qualifying"] = static_cast<long long>(scan.qualifying.size());
  r.note = "every axis-identifying quotient restricts to a surjection along i1";
  return r;
}

// Condition S: for the same quotients, the image of q is generated by the
// image of q∘i1. Verdicts must agree with condition (T) on variety slices;
// the report cross-states that agreement.
inline CheckReport condition_S_check(const AlgebraPtr& X,
                                     const ConditionCaps& caps = {}) {
  std::vector<std::string> inputs{X->name()};
  auto pd = product(X, X);
  if (pd.prod->size() > caps.congruence_carrier_cap) {
    auto r = refused_report("condition-S", inputs,
                            "carrier " + std::to_string(pd.prod->size()) +
                                " of X*X exceeds congruence cap " +
                                std::to_string(caps.congruence_carrier_cap));
    r.stats["required"] = pd.prod->size();
    return r;
  }
  cond_detail::AxisQuotientScan scan;
  try {
    scan = cond_detail::axis_quotients(X, pd, caps);
  } catch (const CapExceeded& e) {
    auto r = refused_report("condition-S", inputs, e.what());
    r.stats["required"] = e.required;
    return r;
  }
  CheckReport r;
  bool failed = false;
  for (const auto& aq : scan.qualifying) {
    auto img = hom_image(aq.f);
    auto sd = subalgebra_generate(aq.quot.algebra, img.members);
    if (static_cast<long long>(sd.members.size()) == aq.quot.algebra->size()) continue;
    std::vector<char> in(aq.quot.algebra->size(), 0);
    for (Index m : sd.members) in[m] = 1;
    Index missing = 0;
    while (in[aq.quot.q.map[missing]]) ++missing;
    auto [ma, mb] = pd.unpair(missing);
    r = fail_report("condition-S", inputs,
                    json{{"theta", congruence_to_json(aq.theta)},
                         {"missing", json::array({ma, mb})},
                         {"generated_size", static_cast<long long>(sd.members.size())},
                         {"quotient_size", aq.quot.algebra->size()}});
    failed = true;
    break;
  }
  if (!failed) {
    r = pass_report("condition-S", inputs);
    r.note = "the axis image generates every axis-identifying quotient";
  }
  r.stats["congruences"] = scan.congruences;
  r.stats["qualifying"] = static_cast<long long>(scan.qualifying.size());
  auto t = condition_T_check(X, caps);
  r.stats["agrees_with_T"] = (t.verdict == r.verdict) ? 1 : 0;
  if (t.verdict != r.verdict)
    r.note += (r.note.empty() ? "" : "; ") + std::string("DISAGREES with condition (T)");
  return r;
}

// ---------------------------------------------------------------------------
// Products commuting with coequalisers
// ---------------------------------------------------------------------------

// The coequaliser of (f1×f2, g1×g2) compared against Q1×Q2. The comparison
// map is the unique factorization of q1×q2 through the product coequaliser;
// it is surjective by construction (q1×q2 is onto), so failure is always a
// collision of two coequaliser classes.
inline CheckReport coeq_product_commute_check(const CoequaliserData& c1,
                                              const CoequaliserData& c2) {
  for (const CoequaliserData* c : {&c1, &c2}) {
    if (!algebra_equal(c->quot.q.dom, c->f.cod) ||
        !hom_equal(compose_homs(c->quot.q, c->f), compose_homs(c->quot.q, c->g)))
      throw PreconditionError("coeq_product_commute_check: instance does not coequalise");
    std::vector<std::pair<Index, Index>> pairs;
    for (Index s = 0; s < c->f.dom->size(); ++s)
      pairs.emplace_back(c->f.map[s], c->g.map[s]);
    if (!congruence_equal(c->quot.theta, generate_congruence(c->f.cod, pairs)))
      throw PreconditionError(
          "coeq_product_commute_check: instance quotient is not the least one");
  }
  std::vector<std::string> inputs{c1.f.cod->name(), c2.f.cod->name()};

  auto fp = hom_product(c1.f, c2.f);
  auto gp = hom_product(c1.g, c2.g);
  auto cpq = coequaliser(fp.hom, gp.hom);
  auto hq = hom_product(c1.quot.q, c2.quot.q);
  auto comparison = factor_through_quotient(hq.hom, cpq.quot);
  if (!comparison)
    throw InternalConsistencyError(
        "coeq_product_commute_check: q1*q2 does not factor through the product coequaliser");

  long long q12 = cpq.quot.algebra->size();
  long long q1q2 = hq.cod.prod->size();
  CheckReport r;
  if (q12 == q1q2) {
    r = pass_report("coeq-product", inputs);
    r.witness = json{{"comparison", comparison->map}};
    r.note = "comparison to the product of quotients is an isomorphism";
  } else {
    // least collision under the comparison map
    Index ci = 0, cj = 0;
    bool found = false;
    for (Index i = 0; i < cpq.quot.algebra->size() && !found; ++i)
      for (Index j = i + 1; j < cpq.quot.algebra->size() && !found; ++j)
        if (comparison->map[i] == comparison->map[j]) { ci = i; cj = j; found = true; }
    if (!found)
      throw InternalConsistencyError(
          "coeq_product_commute_check: size mismatch without a collision");
    // class representatives of the collision, as product coordinates
    auto rep_of_class = [&](Index cls) {
      Index p = 0;
      while (cpq.quot.q.map[p] != cls) ++p;
      auto [a, b] = fp.cod.unpair(p);
      return json::array({a, b});
    };
    r = fail_report("coeq-product", inputs,
                    json{{"f1", c1.f.map},
                         {"g1", c1.g.map},
                         {"f2", c2.f.map},
                         {"g2", c2.g.map},
                         {"collide", json::array({rep_of_class(ci), rep_of_class(cj)})}});
    r.note = "two coequaliser classes share an image in the product of quotients";
  }
  r.stats["coequalised_size"] = q12;
  r.stats["product_of_quotients_size"] = q1q2;
  return r;
}

// All coequalisers of parallel endo pairs on A, ordered by the lexicographic
// (f, g) position in enumerate_homs(A, A).
inline std::vector<CoequaliserData> endo_coequaliser_instances(const AlgebraPtr& A) {
  auto endos = enumerate_homs(A, A);
  std::vector<CoequaliserData> out;
  for (const auto& f : endos)
    for (const auto& g : endos) out.push_back(coequaliser(f, g));
  return out;
}

// Sweep over all endo-pair coequaliser instances of X crossed with those of Y.
inline CheckReport coeq_product_commute_sweep(const AlgebraPtr& X, const AlgebraPtr& Y) {
  cond_detail::require_same_signature(X, Y, "coeq_product_commute_sweep");
  auto il = endo_coequaliser_instances(X);
  auto ir = endo_coequaliser_instances(Y);
  long long checked = 0;
  for (const auto& c1 : il) {
    for (const auto& c2 : ir) {
      ++checked;
      auto r = coeq_product_commute_check(c1, c2);
      if (r.verdict != Verdict::Pass) {
        r.inputs = {X->name(), Y->name()};
        r.stats["instances_left"] = static_cast<long long>(il.size());
        r.stats["instances_right"] = static_cast<long long>(ir.size());
        r.stats["pairs_checked"] = checked;
        return r;
      }
    }
  }
  auto r = pass_report("coeq-product", {X->name(), Y->name()});
  r.stats["instances_left"] = static_cast<long long>(il.size());
  r.stats["instances_right"] = static_cast<long long>(ir.size());
  r.stats["pairs_checked"] = checked;
  r.note = "every endo-pair coequaliser instance commutes with the product";
  return r;
}

// ---------------------------------------------------------------------------
// Local centralic condition on a pullback
// ---------------------------------------------------------------------------

// For p: A -> X, q: B -> X and any congruence Θ on A×_X B:
// (x,u) Θ (y,u) implies (x,v) Θ (y,v) for members of the pullback. The same
// principal-congruence reduction as `centralic` applies.
inline CheckReport local_centralic_check(const Hom& p, const Hom& q,
                                         const ConditionCaps& caps = {}) {
  if (!algebra_equal(p.cod, q.cod))
    throw PreconditionError("local_centralic_check: codomains differ");
  std::vector<std::string> inputs{p.dom->name() + "->" + p.cod->name(),
                                  q.dom->name() + "->" + q.cod->name()};
  auto pb = pullback(p, q);
  long long m = pb.apex.sub->size();
  if (m * m * m * m > caps.work_cap) {
    auto r = refused_report("local-centralic", inputs,
                            "pullback size " + std::to_string(m) +
                                " exceeds the scan budget");
    r.stats["required"] = m;
    return r;
  }

  // apex index of the member (a, b), or -1
  std::vector<int> at(p.dom->size() * q.dom->size(), -1);
  for (int i = 0; i < pb.apex.sub->size(); ++i)
    at[pb.pd.pair(pb.to_left.map[i], pb.to_right.map[i])] = i;

  long long pairs = 0, checks = 0;
  for (int i = 0; i < pb.apex.sub->size(); ++i) {
    for (int j = i + 1; j < pb.apex.sub->size(); ++j) {
      if (pb.to_right.map[i] != pb.to_right.map[j]) continue;
      Index x = pb.to_left.map[i], y = pb.to_left.map[j];
      Index u = pb.to_right.map[i];
      auto theta = generate_congruence(pb.apex.sub, {{static_cast<Index>(i),
                                                      static_cast<Index>(j)}});
      ++pairs;
      for (Index v = 0; v < q.dom->size(); ++v) {
        int iv = at[pb.pd.pair(x, v)], jv = at[pb.pd.pair(y, v)];
        if (iv < 0 || jv < 0) continue;
        ++checks;
        if (!theta.related(iv, jv)) {
          auto r = fail_report("local-centralic", inputs,
                               json{{"x", x},
                                    {"y", y},
                                    {"u", u},
                                    {"v", v},
                                    {"theta", congruence_to_json(theta)}});
          r.stats["apex_size"] = m;
          r.stats["pairs"] = pairs;
          r.stats["checks"] = checks;
          return r;
        }
      }
    }
  }
  auto r = pass_report("local-centralic", inputs);
  r.stats["apex_size"] = m;
  r.stats["pairs"] = pairs;
  r.stats["checks"] = checks;
  r.note = "principal congruences of same-fibre pairs translate across fibres";
  return r;
}

} // namespace huq
