#pragma once
//
// Finite pointed algebras and their homomorphisms.
//
// A carrier is {0, ..., size-1}; element 0 is always the distinguished point,
// and every signature contains exactly one nullary symbol, which evaluates
// to 0 in every algebra. Operation tables are stored flat in row-major order
// (first argument varies slowest). All enumeration in this header is
// deterministic: homs come out in lexicographic order of their map tables.
//

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace huq {

using Index = int;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad table shape, out-of-range entry, ...). The message
// carries the offending coordinate.
struct ValidationError : Error {
  using Error::Error;
};

// An operation was asked to run past one of its configured caps. `required`
// is the smallest cap that would have let it proceed, when known.
struct CapExceeded : Error {
  long long required = -1;
  CapExceeded(const std::string& msg, long long req) : Error(msg), required(req) {}
};

// Caller violated a documented precondition (e.g. star() on a non-central
// morphism).
struct PreconditionError : Error {
  using Error::Error;
};

// Two methods that must agree disagreed. This indicates a bug in the tool or
// in the mathematics it encodes, never a property of the input; it is meant
// to be loud.
struct InternalConsistencyError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

struct OperationSpec {
  std::string name;
  int arity = 0;

  friend bool operator==(const OperationSpec&, const OperationSpec&) = default;
};

// Invariant: exactly one nullary symbol, recorded in `zero_op`.
struct Signature {
  std::vector<OperationSpec> ops;
  int zero_op = -1;

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline void validate_signature(const Signature& sig) {
  int nullaries = 0;
  for (size_t i = 0; i < sig.ops.size(); ++i) {
    const auto& op = sig.ops[i];
    if (op.arity < 0)
      throw ValidationError("operation '" + op.name + "' has negative arity");
    if (op.name.empty())
      throw ValidationError("operation #" + std::to_string(i) + " has an empty name");
    for (size_t j = i + 1; j < sig.ops.size(); ++j)
      if (sig.ops[j].name == op.name)
        throw ValidationError("duplicate operation name '" + op.name + "'");
    if (op.arity == 0) {
      ++nullaries;
      if (sig.zero_op != static_cast<int>(i))
        throw ValidationError("nullary operation '" + op.name +
                              "' is not the designated zero symbol");
    }
  }
  if (nullaries != 1)
    throw ValidationError("signature must contain exactly one nullary symbol, found " +
                          std::to_string(nullaries));
  if (sig.zero_op < 0 || sig.zero_op >= static_cast<int>(sig.ops.size()))
    throw ValidationError("designated zero symbol index out of range");
}

using SignaturePtr = std::shared_ptr<const Signature>;

inline SignaturePtr make_signature(std::vector<OperationSpec> ops) {
  Signature sig;
  sig.ops = std::move(ops);
  for (size_t i = 0; i < sig.ops.size(); ++i)
    if (sig.ops[i].arity == 0) sig.zero_op = static_cast<int>(i);
  validate_signature(sig);
  return std::make_shared<const Signature>(std::move(sig));
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

class FiniteAlgebra {
public:
  FiniteAlgebra(std::string name, SignaturePtr sig, int size,
                std::vector<std::vector<Index>> tables)
      : name_(std::move(name)), sig_(std::move(sig)), size_(size),
        tables_(std::move(tables)) {}

  const std::string& name() const { return name_; }
  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  int size() const { return size_; }
  int num_ops() const { return static_cast<int>(sig_->ops.size()); }
  const std::vector<Index>& table(int op) const { return tables_[op]; }
  const std::vector<std::vector<Index>>& tables() const { return tables_; }

  // Row-major position of an argument tuple in an operation table.
  Index flat_index(std::span<const Index> args) const {
    Index idx = 0;
    for (Index a : args) idx = idx * size_ + a;
    return idx;
  }

  Index apply(int op, std::span<const Index> args) const {
    return tables_[op][flat_index(args)];
  }
  Index apply0(int op) const { return tables_[op][0]; }
  Index apply1(int op, Index a) const { return tables_[op][a]; }
  Index apply2(int op, Index a, Index b) const { return tables_[op][a * size_ + b]; }

  Index zero() const { return tables_[sig_->zero_op][0]; }

private:
  std::string name_;
  SignaturePtr sig_;
  int size_;
  std::vector<std::vector<Index>> tables_; // parallel to signature().ops
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline long long int_pow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Structural checks: table shapes, entry ranges, and the pointedness law
// zero() == 0. Errors name the operation and the offending coordinate.
inline void validate_algebra(const FiniteAlgebra& a) {
  validate_signature(a.signature());
  if (a.size() < 1)
    throw ValidationError("algebra '" + a.name() + "': size must be at least 1");
  const auto& ops = a.signature().ops;
  if (static_cast<size_t>(a.num_ops()) != ops.size())
    throw ValidationError("algebra '" + a.name() + "': table count does not match signature");
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto& spec = ops[i];
    const auto& tbl = a.table(static_cast<int>(i));
    long long want = int_pow(a.size(), spec.arity);
    if (static_cast<long long>(tbl.size()) != want)
      throw ValidationError("algebra '" + a.name() + "', operation '" + spec.name +
                            "': table has " + std::to_string(tbl.size()) +
                            " entries, expected " + std::to_string(want));
    for (size_t pos = 0; pos < tbl.size(); ++pos) {
      if (tbl[pos] < 0 || tbl[pos] >= a.size()) {
        // Decode the flat position back into an argument tuple for the message.
        std::string coord = "(";
        long long rest = static_cast<long long>(pos);
        std::vector<Index> args(spec.arity);
        for (int k = spec.arity - 1; k >= 0; --k) {
          args[k] = static_cast<Index>(rest % a.size());
          rest /= a.size();
        }
        for (int k = 0; k < spec.arity; ++k)
          coord += (k ? "," : "") + std::to_string(args[k]);
        coord += ")";
        throw ValidationError("algebra '" + a.name() + "', operation '" + spec.name +
                              "': entry at " + coord + " is " + std::to_string(tbl[pos]) +
                              ", out of range");
      }
    }
  }
  if (a.zero() != 0)
    throw ValidationError("algebra '" + a.name() +
                          "': zero symbol evaluates to " + std::to_string(a.zero()) +
                          ", must be 0");
  // Pointed-category laws: every operation must fix the point, or zero
  // morphisms (and the product axis injections) do not exist.
  for (size_t i = 0; i < ops.size(); ++i) {
    if (a.table(static_cast<int>(i))[0] != 0)
      throw ValidationError("algebra '" + a.name() + "', operation '" + ops[i].name +
                            "': entry at the all-zero tuple is " +
                            std::to_string(a.table(static_cast<int>(i))[0]) +
                            ", must be 0 (operations must preserve the point)");
  }
}

inline AlgebraPtr make_algebra(std::string name, SignaturePtr sig, int size,
                               std::vector<std::vector<Index>> tables) {
  auto a = std::make_shared<const FiniteAlgebra>(std::move(name), std::move(sig), size,
                                                 std::move(tables));
  validate_algebra(*a);
  return a;
}

// Equality up to table identity: same carrier size, same signature, same
// tables. Names are metadata and do not participate.
inline bool algebra_equal(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (&a == &b) return true;
  return a.size() == b.size() && a.signature() == b.signature() && a.tables() == b.tables();
}
inline bool algebra_equal(const AlgebraPtr& a, const AlgebraPtr& b) {
  return algebra_equal(*a, *b);
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

struct Hom {
  AlgebraPtr dom;
  AlgebraPtr cod;
  std::vector<Index> map; // map[i] = image of carrier element i

  Index operator()(Index i) const { return map[i]; }
};

inline bool hom_equal(const Hom& f, const Hom& g) {
  return f.map == g.map && algebra_equal(f.dom, g.dom) && algebra_equal(f.cod, g.cod);
}

// Does `map` preserve every operation? Returns the first violation as
// (op index, flat argument position), or nullopt if it is a hom.
inline std::optional<std::pair<int, Index>> hom_violation(const FiniteAlgebra& A,
                                                          const FiniteAlgebra& B,
                                                          const std::vector<Index>& map) {
  for (int op = 0; op < A.num_ops(); ++op) {
    int k = A.signature().ops[op].arity;
    long long tuples = int_pow(A.size(), k);
    std::vector<Index> args(k, 0), mapped(k, 0);
    for (long long t = 0; t < tuples; ++t) {
      long long rest = t;
      for (int i = k - 1; i >= 0; --i) { args[i] = static_cast<Index>(rest % A.size()); rest /= A.size(); }
      for (int i = 0; i < k; ++i) mapped[i] = map[args[i]];
      if (map[A.apply(op, args)] != B.apply(op, mapped))
        return std::make_pair(op, static_cast<Index>(t));
    }
  }
  return std::nullopt;
}

inline Hom make_hom(AlgebraPtr dom, AlgebraPtr cod, std::vector<Index> map) {
  if (dom->signature() != cod->signature())
    throw PreconditionError("hom endpoints have different signatures");
  if (static_cast<int>(map.size()) != dom->size())
    throw ValidationError("hom map has wrong length");
  for (Index v : map)
    if (v < 0 || v >= cod->size()) throw ValidationError("hom map entry out of range");
  if (auto bad = hom_violation(*dom, *cod, map)) {
    const auto& spec = dom->signature().ops[bad->first];
    throw ValidationError("map does not preserve operation '" + spec.name +
                          "' at flat position " + std::to_string(bad->second));
  }
  return Hom{std::move(dom), std::move(cod), std::move(map)};
}

inline Hom identity_hom(const AlgebraPtr& a) {
  std::vector<Index> map(a->size());
  for (int i = 0; i < a->size(); ++i) map[i] = i;
  return Hom{a, a, std::move(map)};
}

// x |-> 0. A hom for any two algebras in one signature, because validation
// guarantees every operation fixes the point.
inline Hom zero_hom(const AlgebraPtr& dom, const AlgebraPtr& cod) {
  if (dom->signature() != cod->signature())
    throw PreconditionError("zero_hom: algebras have different signatures");
  std::vector<Index> map(dom->size(), 0);
  return Hom{dom, cod, std::move(map)};
}

inline Hom compose_homs(const Hom& g, const Hom& f) {
  if (!algebra_equal(f.cod, g.dom))
    throw PreconditionError("compose_homs: codomain of inner does not match domain of outer");
  std::vector<Index> map(f.dom->size());
  for (int i = 0; i < f.dom->size(); ++i) map[i] = g.map[f.map[i]];
  return Hom{f.dom, g.cod, std::move(map)};
}

struct ImageInfo {
  std::vector<Index> members; // sorted, distinct
  bool surjective = false;
  bool injective = false;
};

inline ImageInfo hom_image(const Hom& f) {
  ImageInfo info;
  std::vector<char> seen(f.cod->size(), 0);
  for (Index v : f.map) seen[v] = 1;
  for (int i = 0; i < f.cod->size(); ++i)
    if (seen[i]) info.members.push_back(i);
  info.surjective = static_cast<int>(info.members.size()) == f.cod->size();
  std::vector<Index> sorted = f.map;
  std::sort(sorted.begin(), sorted.end());
  info.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return info;
}

inline bool is_surjective(const Hom& f) { return hom_image(f).surjective; }

// ---------------------------------------------------------------------------
// Hom enumeration
// ---------------------------------------------------------------------------
//
// Backtracking over carrier indices in ascending order. After each tentative
// assignment we propagate: any operation tuple whose arguments are all
// assigned forces the image of its result; a clash prunes the branch. Because
// branching always happens at the smallest unassigned index with values tried
// in ascending order, completed maps are produced in lexicographic order.

namespace detail {

struct OpTuple {
  int op;
  std::vector<Index> args;
  Index result; // value of the operation at args, in the domain
};

inline std::vector<OpTuple> all_op_tuples(const FiniteAlgebra& A) {
  std::vector<OpTuple> out;
  for (int op = 0; op < A.num_ops(); ++op) {
    int k = A.signature().ops[op].arity;
    long long tuples = int_pow(A.size(), k);
    for (long long t = 0; t < tuples; ++t) {
      OpTuple ot;
      ot.op = op;
      ot.args.resize(k);
      long long rest = t;
      for (int i = k - 1; i >= 0; --i) { ot.args[i] = static_cast<Index>(rest % A.size()); rest /= A.size(); }
      ot.result = A.table(op)[t];
      out.push_back(std::move(ot));
    }
  }
  return out;
}

class HomSearch {
public:
  HomSearch(const AlgebraPtr& dom, const AlgebraPtr& cod)
      : dom_(dom), cod_(cod), tuples_(all_op_tuples(*dom)) {
    if (dom->signature() != cod->signature())
      throw PreconditionError("enumerate_homs: algebras have different signatures");
  }

  // pins: forced assignments applied before the search starts.
  std::vector<Hom> run(const std::vector<std::pair<Index, Index>>& pins,
                       long long* nodes_out = nullptr) {
    map_.assign(dom_->size(), -1);
    results_.clear();
    nodes_ = 0;
    bool ok = true;
    std::vector<Index> trail;
    for (auto [at, val] : pins) {
      if (map_[at] == -1) { map_[at] = val; trail.push_back(at); }
      else if (map_[at] != val) { ok = false; break; }
    }
    if (ok && propagate(trail)) extend();
    for (Index at : trail) map_[at] = -1;
    std::sort(results_.begin(), results_.end(),
              [](const Hom& x, const Hom& y) { return x.map < y.map; });
    if (nodes_out) *nodes_out = nodes_;
    return std::move(results_);
  }

private:
  // Applies every forced consequence of the current partial map. Newly forced
  // indices are appended to `trail` so the caller can undo them. Returns false
  // on a clash.
  bool propagate(std::vector<Index>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& ot : tuples_) {
        Index want = -1;
        bool all = true;
        for (Index a : ot.args)
          if (map_[a] == -1) { all = false; break; }
        if (!all) continue;
        margs_.resize(ot.args.size());
        for (size_t i = 0; i < ot.args.size(); ++i) margs_[i] = map_[ot.args[i]];
        want = cod_->apply(ot.op, margs_);
        Index& slot = map_[ot.result];
        if (slot == -1) {
          slot = want;
          trail.push_back(ot.result);
          changed = true;
        } else if (slot != want) {
          return false;
        }
      }
    }
    return true;
  }

  void extend() {
    ++nodes_;
    int at = -1;
    for (int i = 0; i < dom_->size(); ++i)
      if (map_[i] == -1) { at = i; break; }
    if (at == -1) {
      results_.push_back(Hom{dom_, cod_, map_});
      return;
    }
    for (Index v = 0; v < cod_->size(); ++v) {
      std::vector<Index> trail;
      map_[at] = v;
      trail.push_back(at);
      if (propagate(trail)) extend();
      for (Index t : trail) map_[t] = -1;
    }
  }

  AlgebraPtr dom_, cod_;
  std::vector<OpTuple> tuples_;
  std::vector<Index> map_;
  std::vector<Index> margs_;
  std::vector<Hom> results_;
  long long nodes_ = 0;
};

} // namespace detail

inline std::vector<Hom> enumerate_homs(const AlgebraPtr& dom, const AlgebraPtr& cod,
                                       long long* nodes_out = nullptr) {
  detail::HomSearch search(dom, cod);
  return search.run({}, nodes_out);
}

// All homs dom -> cod extending the given partial assignment. Used by the
// cooperator search, which pins both product axes.
inline std::vector<Hom> enumerate_homs_pinned(const AlgebraPtr& dom, const AlgebraPtr& cod,
                                              const std::vector<std::pair<Index, Index>>& pins,
                                              long long* nodes_out = nullptr) {
  detail::HomSearch search(dom, cod);
  return search.run(pins, nodes_out);
}

} // namespace huq
