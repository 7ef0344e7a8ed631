#pragma once
//
// Algebra file format and manifests.
//
// One algebra per JSON file:
//   { "name": "...", "size": n, "zero": 0,
//     "operations": [ { "name": "...", "arity": k, "table": <nested> } ] }
// where a table of arity k is a depth-k nested array, each level of length n,
// leaves in [0, n). Arity 0 tables are a bare integer. `zero` must be 0 (the
// point is always element 0) and exactly one operation has arity 0.
//
// A manifest is { "algebras": [ "path", ... ] }, paths relative to the
// manifest's own directory.
//

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "algebra.hpp"

namespace huq {

using json = nlohmann::json;

namespace io_detail {

inline json nest_table(const std::vector<Index>& flat, int size, int arity, long long& pos) {
  if (arity == 0) return flat[pos++];
  json arr = json::array();
  for (int i = 0; i < size; ++i) arr.push_back(nest_table(flat, size, arity - 1, pos));
  return arr;
}

inline void flatten_table(const json& j, int size, int arity, const std::string& op,
                          std::string path, std::vector<Index>& out) {
  if (arity == 0) {
    if (!j.is_number_integer())
      throw ValidationError("operation '" + op + "': table entry at " +
                            (path.empty() ? "()" : path) + " is not an integer");
    long long v = j.get<long long>();
    if (v < 0 || v >= size)
      throw ValidationError("operation '" + op + "': entry at " + (path.empty() ? "()" : path) +
                            " is " + std::to_string(v) + ", out of range [0," +
                            std::to_string(size) + ")");
    out.push_back(static_cast<Index>(v));
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw ValidationError("operation '" + op + "': table level at " +
                          (path.empty() ? "(top)" : path) + " must be an array of length " +
                          std::to_string(size));
  for (int i = 0; i < size; ++i) {
    std::string sub = path.empty() ? "(" + std::to_string(i) : path + "," + std::to_string(i);
    flatten_table(j[i], size, arity - 1, op, sub + (arity == 1 ? ")" : ""), out);
  }
}

} // namespace io_detail

inline json algebra_to_json(const FiniteAlgebra& a) {
  json ops = json::array();
  for (int op = 0; op < a.num_ops(); ++op) {
    const auto& spec = a.signature().ops[op];
    long long pos = 0;
    ops.push_back({{"name", spec.name},
                   {"arity", spec.arity},
                   {"table", io_detail::nest_table(a.table(op), a.size(), spec.arity, pos)}});
  }
  return json{{"name", a.name()}, {"size", a.size()}, {"zero", 0}, {"operations", ops}};
}

inline AlgebraPtr algebra_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("algebra document must be a JSON object");
  for (const char* field : {"name", "size", "zero", "operations"})
    if (!j.contains(field))
      throw ValidationError(std::string("algebra document missing field '") + field + "'");
  if (!j["name"].is_string()) throw ValidationError("field 'name' must be a string");
  if (!j["size"].is_number_integer() || j["size"].get<long long>() < 1)
    throw ValidationError("field 'size' must be a positive integer");
  if (!j["zero"].is_number_integer() || j["zero"].get<long long>() != 0)
    throw ValidationError("field 'zero' must be 0 (the point is always element 0)");
  if (!j["operations"].is_array())
    throw ValidationError("field 'operations' must be an array");

  int size = j["size"].get<int>();
  std::vector<OperationSpec> specs;
  std::vector<std::vector<Index>> tables;
  for (const auto& opj : j["operations"]) {
    if (!opj.is_object() || !opj.contains("name") || !opj.contains("arity") ||
        !opj.contains("table"))
      throw ValidationError("each operation needs 'name', 'arity' and 'table'");
    if (!opj["name"].is_string()) throw ValidationError("operation name must be a string");
    std::string name = opj["name"].get<std::string>();
    if (!opj["arity"].is_number_integer() || opj["arity"].get<long long>() < 0)
      throw ValidationError("operation '" + name + "': arity must be a non-negative integer");
    int arity = opj["arity"].get<int>();
    std::vector<Index> flat;
    io_detail::flatten_table(opj["table"], size, arity, name, "", flat);
    specs.push_back({name, arity});
    tables.push_back(std::move(flat));
  }
  auto sig = make_signature(std::move(specs));
  return make_algebra(j["name"].get<std::string>(), sig, size, std::move(tables));
}

inline AlgebraPtr load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("algebra file '" + path + "': " + e.what());
  }
  try {
    return algebra_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError("algebra file '" + path + "': " + e.what());
  }
}

inline void save_algebra(const std::string& path, const FiniteAlgebra& a) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write algebra file '" + path + "'");
  out << algebra_to_json(a).dump(2) << "\n";
}

inline std::vector<AlgebraPtr> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("algebras") || !j["algebras"].is_array())
    throw ValidationError("manifest '" + path + "' must be {\"algebras\": [paths]}");
  auto base = std::filesystem::path(path).parent_path();
  std::vector<AlgebraPtr> out;
  for (const auto& e : j["algebras"]) {
    if (!e.is_string()) throw ValidationError("manifest entries must be path strings");
    std::filesystem::path p = e.get<std::string>();
    if (p.is_relative()) p = base / p;
    out.push_back(load_algebra(p.string()));
  }
  return out;
}

// FNV-1a over the canonical (sorted-key, compact) dump. Stable across runs
// and platforms; used to stamp report inputs.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

inline std::string algebra_digest(const FiniteAlgebra& a) {
  return fnv1a_digest(algebra_to_json(a).dump());
}

} // namespace huq
