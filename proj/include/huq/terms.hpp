#pragma once
//
// Term search: does an algebra have a majority term, an m4 term, or a
// two-sided unit term ("plus")? The search walks the clone generated by the
// projections and the constant 0, breadth-first, hashing each k-ary operation
// table it materializes. Parent pointers let a hit be rebuilt as a syntax
// tree, which is then re-validated by an independent evaluator before being
// returned.
//
// Defining equations:
//   majority  m(x,x,y) = m(x,y,x) = m(y,x,x) = x
//   m4        m(x,x,y,0) = x,  m(0,y,y,y) = y,  m(y,x,y,0) = y
//   plus      x + 0 = x,  0 + x = x
//

#include <string>
#include <unordered_map>

#include <json.hpp>

#include "algebra.hpp"

namespace huq {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Term {
  enum class Kind { Var, Zero, Op };
  Kind kind = Kind::Zero;
  int index = 0; // variable slot for Var, operation index for Op
  std::vector<Term> children;
};

inline Index evaluate_term(const FiniteAlgebra& A, const Term& t,
                           std::span<const Index> args) {
  switch (t.kind) {
    case Term::Kind::Var:
      return args[t.index];
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Op: {
      std::vector<Index> vals(t.children.size());
      for (size_t i = 0; i < t.children.size(); ++i)
        vals[i] = evaluate_term(A, t.children[i], args);
      return A.apply(t.index, vals);
    }
  }
  return 0;
}

inline std::string variable_name(int i) {
  static const char* names[] = {"x", "y", "z", "w"};
  if (i < 4) return names[i];
  return "v" + std::to_string(i);
}

inline std::string term_to_string(const Term& t, const Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Var:
      return variable_name(t.index);
    case Term::Kind::Zero:
      return sig.ops[sig.zero_op].name;
    case Term::Kind::Op: {
      std::string s = sig.ops[t.index].name + "(";
      for (size_t i = 0; i < t.children.size(); ++i)
        s += (i ? ", " : "") + term_to_string(t.children[i], sig);
      return s + ")";
    }
  }
  return "?";
}

inline nlohmann::json term_to_json(const Term& t, const Signature& sig) {
  using nlohmann::json;
  switch (t.kind) {
    case Term::Kind::Var:
      return json{{"var", t.index}};
    case Term::Kind::Zero:
      return json{{"op", sig.ops[sig.zero_op].name}, {"args", json::array()}};
    case Term::Kind::Op: {
      json args = json::array();
      for (const auto& c : t.children) args.push_back(term_to_json(c, sig));
      return json{{"op", sig.ops[t.index].name}, {"args", args}};
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

enum class TermKind { Majority, M4, UnitalPlus };

inline const char* to_string(TermKind k) {
  switch (k) {
    case TermKind::Majority: return "majority";
    case TermKind::M4: return "m4";
    default: return "plus";
  }
}

inline int term_arity(TermKind k) {
  switch (k) {
    case TermKind::Majority: return 3;
    case TermKind::M4: return 4;
    default: return 2;
  }
}

struct TermSearchCaps {
  long long element_cap = 1'000'000; // distinct clone elements materialized
  long long application_cap = 0;     // 0: derive as 64 * element_cap
  int majority_carrier_cap = 4;      // also applies to plus
  int m4_carrier_cap = 3;

  long long applications() const {
    return application_cap > 0 ? application_cap : 64 * element_cap;
  }
};

struct TermSearchOutcome {
  enum class Status { Found, None, Refused };
  Status status = Status::None;
  std::optional<Term> term;
  long long closure_size = 0;
  long long applications = 0;
  std::string refusal; // which budget tripped, with the offending value
};

namespace term_detail {

// The defining equations as a predicate over a flat k-ary table on carrier n.
// Argument tuples are encoded row-major like operation tables.
inline bool satisfies(TermKind kind, const std::string& vec, int n) {
  auto at = [&](std::initializer_list<Index> args) {
    long long idx = 0;
    for (Index a : args) idx = idx * n + a;
    return static_cast<Index>(static_cast<unsigned char>(vec[idx]));
  };
  switch (kind) {
    case TermKind::Majority:
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
          if (at({x, x, y}) != x || at({x, y, x}) != x || at({y, x, x}) != x) return false;
      return true;
    case TermKind::M4:
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
          if (at({x, x, y, 0}) != x || at({0, y, y, y}) != y || at({y, x, y, 0}) != y)
            return false;
      return true;
    case TermKind::UnitalPlus:
      for (Index x = 0; x < n; ++x)
        if (at({x, 0}) != x || at({0, x}) != x) return false;
      return true;
  }
  return false;
}

// Equation check for a rebuilt syntax tree, evaluated via evaluate_term so it
// does not share any state with the closure tables.
inline bool revalidate(TermKind kind, const FiniteAlgebra& A, const Term& t) {
  int n = A.size();
  std::vector<Index> a;
  switch (kind) {
    case TermKind::Majority:
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
          a = {x, x, y};
          if (evaluate_term(A, t, a) != x) return false;
          a = {x, y, x};
          if (evaluate_term(A, t, a) != x) return false;
          a = {y, x, x};
          if (evaluate_term(A, t, a) != x) return false;
        }
      return true;
    case TermKind::M4:
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
          a = {x, x, y, 0};
          if (evaluate_term(A, t, a) != x) return false;
          a = {0, y, y, y};
          if (evaluate_term(A, t, a) != y) return false;
          a = {y, x, y, 0};
          if (evaluate_term(A, t, a) != y) return false;
        }
      return true;
    case TermKind::UnitalPlus:
      for (Index x = 0; x < n; ++x) {
        a = {x, 0};
        if (evaluate_term(A, t, a) != x) return false;
        a = {0, x};
        if (evaluate_term(A, t, a) != x) return false;
      }
      return true;
  }
  return false;
}

} // namespace term_detail

inline TermSearchOutcome term_search(const AlgebraPtr& A, TermKind kind,
                                     const TermSearchCaps& caps = {}) {
  TermSearchOutcome out;
  int n = A->size();
  int k = term_arity(kind);
  int carrier_cap =
      kind == TermKind::M4 ? caps.m4_carrier_cap : caps.majority_carrier_cap;
  if (n > carrier_cap) {
    out.status = TermSearchOutcome::Status::Refused;
    out.refusal = std::string(to_string(kind)) + " search supports carriers up to " +
                  std::to_string(carrier_cap) + ", got " + std::to_string(n);
    return out;
  }

  long long tuples = int_pow(n, k);
  std::vector<std::string> elems;
  struct Parent {
    int op = -1;             // -1: generator
    Term::Kind gen_kind = Term::Kind::Zero;
    int gen_index = 0;
    std::vector<int> children;
  };
  std::vector<Parent> parents;
  std::unordered_map<std::string, int> ids;

  auto rebuild = [&](int id) {
    auto rec = [&](auto&& self, int i) -> Term {
      const Parent& p = parents[i];
      if (p.op < 0) return Term{p.gen_kind, p.gen_index, {}};
      Term t{Term::Kind::Op, p.op, {}};
      for (int c : p.children) t.children.push_back(self(self, c));
      return t;
    };
    return rec(rec, id);
  };

  // returns the id if vec is new, -1 if already known
  auto intern = [&](std::string vec, Parent p) -> int {
    auto [it, fresh] = ids.emplace(std::move(vec), static_cast<int>(elems.size()));
    if (!fresh) return -1;
    elems.push_back(it->first);
    parents.push_back(std::move(p));
    return it->second;
  };

  auto finish_found = [&](int id) {
    Term t = rebuild(id);
    if (!term_detail::revalidate(kind, *A, t))
      throw InternalConsistencyError("term search produced a table its own term does not satisfy");
    out.status = TermSearchOutcome::Status::Found;
    out.term = std::move(t);
    out.closure_size = static_cast<long long>(elems.size());
  };

  // generators: projections, then the constant 0
  for (int v = 0; v < k; ++v) {
    std::string vec(tuples, '\0');
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      Index val = 0;
      for (int i = k - 1; i >= 0; --i) {
        if (i == v) val = static_cast<Index>(rest % n);
        rest /= n;
      }
      vec[t] = static_cast<char>(val);
    }
    int id = intern(std::move(vec), Parent{-1, Term::Kind::Var, v, {}});
    if (id >= 0 && term_detail::satisfies(kind, elems[id], n)) { finish_found(id); return out; }
  }
  {
    int id = intern(std::string(tuples, '\0'), Parent{-1, Term::Kind::Zero, 0, {}});
    if (id >= 0 && term_detail::satisfies(kind, elems[id], n)) { finish_found(id); return out; }
  }

  // breadth-first closure: when element i is processed, apply every operation
  // to every argument tuple over {0..i} that mentions i, so each combination
  // is tried exactly once.
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    for (int op = 0; op < A->num_ops(); ++op) {
      int m = A->signature().ops[op].arity;
      if (m == 0) continue;
      std::vector<int> pick(m, 0);
      const auto& table = A->table(op);
      while (true) {
        bool mentions = false;
        for (int s = 0; s < m; ++s)
          if (pick[s] == i) { mentions = true; break; }
        if (mentions) {
          ++out.applications;
          if (out.applications > caps.applications()) {
            out.status = TermSearchOutcome::Status::Refused;
            out.refusal = "application budget exceeded (" +
                          std::to_string(caps.applications()) +
                          "); raise --cap-steps to search further";
            out.closure_size = static_cast<long long>(elems.size());
            return out;
          }
          std::string vec(tuples, '\0');
          if (m == 2) {
            const std::string& u = elems[pick[0]];
            const std::string& v = elems[pick[1]];
            for (long long t = 0; t < tuples; ++t)
              vec[t] = static_cast<char>(
                  table[static_cast<unsigned char>(u[t]) * n + static_cast<unsigned char>(v[t])]);
          } else {
            std::vector<Index> args(m);
            for (long long t = 0; t < tuples; ++t) {
              for (int s = 0; s < m; ++s)
                args[s] = static_cast<Index>(static_cast<unsigned char>(elems[pick[s]][t]));
              vec[t] = static_cast<char>(A->apply(op, args));
            }
          }
          int id = intern(std::move(vec), Parent{op, Term::Kind::Zero, 0, pick});
          if (id >= 0) {
            if (static_cast<long long>(elems.size()) > caps.element_cap) {
              out.status = TermSearchOutcome::Status::Refused;
              out.refusal = "closure element budget exceeded (" +
                            std::to_string(caps.element_cap) +
                            "); raise --cap-steps to search further";
              out.closure_size = static_cast<long long>(elems.size());
              return out;
            }
            if (term_detail::satisfies(kind, elems[id], n)) {
              finish_found(id);
              return out;
            }
          }
        }
        // odometer over {0..i}^m
        int s = m - 1;
        while (s >= 0 && pick[s] == i) pick[s--] = 0;
        if (s < 0) break;
        ++pick[s];
      }
    }
  }

  out.status = TermSearchOutcome::Status::None;
  out.closure_size = static_cast<long long>(elems.size());
  return out;
}

} // namespace huq
