#pragma once

// JSON formats:
//   semigroup   {"order": n, "table": [[...]], "labels": [...]}   (labels optional)
//   system      {"skeleton": <semigroup or file ref>, "index_sizes": [...],
//                "lambda": {"a,b": [...]}, "rho": {"a,b": [...]}}
//   pre-system  {"skeleton": ..., "base_size": m, "index_sizes": [...],
//                "lambda1": [[...]...], "rho1": [[...]...]}
//   partition   {"classes": [[ids...], ...]}
//
// Readers perform structural validation only and throw Malformed on shape
// problems; semantic validation (associativity, axioms) stays with the
// owning constructors so callers can report violations instead of failing
// to parse.  A "skeleton" given as a string is read from that path,
// resolved relative to the referring file's directory.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrs/lr_product.hpp"
#include "lrs/lr_system.hpp"
#include "lrs/pre_system.hpp"
#include "lrs/semigroup.hpp"

namespace lrs {

using Json = nlohmann::json;

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Malformed("cannot open " + path.string());
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw Malformed("invalid JSON in " + path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Malformed("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

namespace detail {

inline std::vector<int> int_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Malformed(what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Malformed(what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

inline Table int_matrix(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Malformed(what + " must be an array of arrays");
  Table out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(int_array(row, what + " row"));
  return out;
}

}  // namespace detail

inline Json semigroup_to_json(const FiniteSemigroup& s) {
  return Json{{"order", s.order}, {"table", s.table}, {"labels", s.labels}};
}

/// Structural parse + the usual from_table validation (range and
/// associativity), since a non-semigroup table is unusable everywhere.
inline FiniteSemigroup semigroup_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    throw Malformed("semigroup needs \"order\" and \"table\"");
  if (!j["order"].is_number_integer())
    throw Malformed("\"order\" must be an integer");
  int order = j["order"].get<int>();
  Table table = detail::int_matrix(j["table"], "\"table\"");
  if (static_cast<int>(table.size()) != order)
    throw Malformed("\"table\" must have \"order\" rows");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array())
      throw Malformed("\"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw Malformed("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (static_cast<int>(labels.size()) != order)
      throw Malformed("\"labels\" must have \"order\" entries");
  }
  return from_table(std::move(table), std::move(labels));
}

inline FiniteSemigroup load_semigroup(const std::filesystem::path& path) {
  return semigroup_from_json(read_json_file(path));
}

namespace detail {

inline FiniteSemigroup skeleton_field(const Json& j,
                                      const std::filesystem::path& dir) {
  if (!j.contains("skeleton")) throw Malformed("missing \"skeleton\"");
  const Json& sk = j["skeleton"];
  if (sk.is_string())
    return load_semigroup(dir / sk.get<std::string>());
  return semigroup_from_json(sk);
}

inline PairMaps pair_maps(const Json& j, const std::string& key, int n) {
  if (!j.contains(key) || !j[key].is_object())
    throw Malformed("\"" + key + "\" must be an object keyed \"a,b\"");
  PairMaps maps(n, std::vector<IndexMap>(n));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (const auto& [k, v] : j[key].items()) {
    size_t comma = k.find(',');
    if (comma == std::string::npos)
      throw Malformed("\"" + key + "\" key \"" + k + "\" is not \"a,b\"");
    int a, b;
    try {
      a = std::stoi(k.substr(0, comma));
      b = std::stoi(k.substr(comma + 1));
    } catch (const std::exception&) {
      throw Malformed("\"" + key + "\" key \"" + k + "\" is not \"a,b\"");
    }
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Malformed("\"" + key + "\" key \"" + k + "\" out of range");
    maps[a][b] = int_array(v, "\"" + key + "\"[" + k + "]");
    seen[a][b] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!seen[a][b])
        throw Malformed("\"" + key + "\" missing entry \"" +
                        std::to_string(a) + "," + std::to_string(b) + "\"");
  return maps;
}

}  // namespace detail

inline Json system_to_json(const LrSystem& sys) {
  Json lambda = Json::object(), rho = Json::object();
  int n = sys.skeleton.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::string key = std::to_string(a) + "," + std::to_string(b);
      lambda[key] = sys.lambda[a][b];
      rho[key] = sys.rho[a][b];
    }
  return Json{{"skeleton", semigroup_to_json(sys.skeleton)},
              {"index_sizes", sys.index_sizes},
              {"lambda", lambda},
              {"rho", rho}};
}

/// Structural parse only; run check_arities/check_axioms or make_system on
/// the result.
inline LrSystem system_from_json(const Json& j,
                                 const std::filesystem::path& dir = ".") {
  if (!j.is_object()) throw Malformed("system must be a JSON object");
  LrSystem sys;
  sys.skeleton = detail::skeleton_field(j, dir);
  if (!j.contains("index_sizes"))
    throw Malformed("missing \"index_sizes\"");
  sys.index_sizes = detail::int_array(j["index_sizes"], "\"index_sizes\"");
  sys.lambda = detail::pair_maps(j, "lambda", sys.skeleton.order);
  sys.rho = detail::pair_maps(j, "rho", sys.skeleton.order);
  return sys;
}

inline LrSystem load_system(const std::filesystem::path& path) {
  return system_from_json(read_json_file(path), path.parent_path());
}

inline Json pre_system_to_json(const PreLrSystem& pre) {
  return Json{{"skeleton", semigroup_to_json(pre.skeleton)},
              {"base_size", pre.base_size},
              {"index_sizes", pre.index_sizes},
              {"lambda1", pre.lambda1},
              {"rho1", pre.rho1}};
}

inline PreLrSystem pre_system_from_json(
    const Json& j, const std::filesystem::path& dir = ".") {
  if (!j.is_object()) throw Malformed("pre-system must be a JSON object");
  PreLrSystem pre;
  pre.skeleton = detail::skeleton_field(j, dir);
  if (!j.contains("base_size") || !j["base_size"].is_number_integer())
    throw Malformed("missing integer \"base_size\"");
  pre.base_size = j["base_size"].get<int>();
  if (!j.contains("index_sizes"))
    throw Malformed("missing \"index_sizes\"");
  pre.index_sizes = detail::int_array(j["index_sizes"], "\"index_sizes\"");
  if (!j.contains("lambda1") || !j.contains("rho1"))
    throw Malformed("missing \"lambda1\"/\"rho1\"");
  for (const auto& row : detail::int_matrix(j["lambda1"], "\"lambda1\""))
    pre.lambda1.push_back(row);
  for (const auto& row : detail::int_matrix(j["rho1"], "\"rho1\""))
    pre.rho1.push_back(row);
  return pre;
}

inline PreLrSystem load_pre_system(const std::filesystem::path& path) {
  return pre_system_from_json(read_json_file(path), path.parent_path());
}

inline std::vector<std::vector<int>> partition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("classes"))
    throw Malformed("partition needs \"classes\"");
  std::vector<std::vector<int>> out;
  if (!j["classes"].is_array())
    throw Malformed("\"classes\" must be an array");
  for (const auto& cls : j["classes"])
    out.push_back(detail::int_array(cls, "partition class"));
  return out;
}

inline std::vector<std::vector<int>> load_partition(
    const std::filesystem::path& path) {
  return partition_from_json(read_json_file(path));
}

inline Json product_to_json(const ProductSemigroup& p) {
  Json j = semigroup_to_json(p.semigroup);
  j["element_labels"] = p.semigroup.labels;
  Json skel = Json::array();
  for (const auto& e : p.elements) skel.push_back(e.skel);
  j["skeleton_of"] = skel;
  return j;
}

}  // namespace lrs
