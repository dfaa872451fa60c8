#pragma once

// pgroup-v1 group definitions.
//
//   {"format": "pgroup-v1", "prime": p, "kind": K, "label": "...", ...}
//
// kind "pc":            "ngens": n,
//                       "powers": {"i": [[j, e], ...]},          g_i^p
//                       "conjugates": {"j,i": [[k, e], ...]}     g_j^{g_i}, j > i
//                       Generator indices are 1-based. Omitted relations are
//                       trivial powers and commuting pairs.
// kind "abelian":       "exponents": [e_1, ...]
// kind "unitriangular": "n": n, "m": m
// kind "semidirect":    "module": [e_1, ...]  (abelian base, generators x_1..x_k)
//                       "alpha": [[c_11, ..., c_1k], ...]  image of x_i as exponents
//                       "t": t  (alpha has order p^t)
// kind "catalog":       "name": "...", "params": {"key": int | [int, ...]}
//
// "label" is optional everywhere. Unknown fields are rejected.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "builders.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "group.hpp"
#include "pc.hpp"

namespace pgroup {

using Json = nlohmann::json;

inline constexpr const char* kFormatTag = "pgroup-v1";

struct SemidirectSpec {
  std::vector<int> module;
  std::vector<std::vector<std::uint64_t>> alpha;
  int t = 1;
};

struct GroupDefinition {
  std::string kind;
  std::uint32_t prime = 3;
  std::optional<std::string> label;
  PcPresentation pc;            // kind == "pc"
  std::vector<int> exponents;   // kind == "abelian"
  int n = 0, m = 0;             // kind == "unitriangular"
  SemidirectSpec semidirect;    // kind == "semidirect"
  CatalogRef catalog;           // kind == "catalog"; params exclude "prime"
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

inline void only_fields(const Json& j, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) parse_fail("unknown field \"" + k + "\"");
}

inline const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::int64_t as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) parse_fail(what + " must be an integer");
  return v.get<std::int64_t>();
}

inline int as_small_int(const Json& v, const std::string& what) {
  auto x = as_int(v, what);
  if (x < -1000000 || x > 1000000) parse_fail(what + " out of range");
  return static_cast<int>(x);
}

inline std::vector<int> as_int_list(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(as_small_int(x, what));
  return out;
}

// 1-based [[gen, exp], ...] to a 0-based PcWord. Range checks happen in build_from_pc.
inline PcWord as_word(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be an array of [generator, exponent] pairs");
  PcWord w;
  for (const auto& pair : v) {
    if (!pair.is_array() || pair.size() != 2) parse_fail(what + " entries must be [generator, exponent]");
    w.emplace_back(as_small_int(pair[0], what) - 1, as_small_int(pair[1], what));
  }
  return w;
}

inline Json word_json(const PcWord& w) {
  Json a = Json::array();
  for (auto [g, e] : w) a.push_back(Json::array({g + 1, e}));
  return a;
}

inline int parse_index(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(what + " key \"" + s + "\" is not a positive integer");
  return std::stoi(s);
}

}  // namespace detail

inline GroupDefinition definition_from_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) parse_fail("definition must be a JSON object");
  const Json& fmt = field(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != kFormatTag)
    parse_fail(std::string("format must be \"") + kFormatTag + "\"");
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_fail("kind must be a string");

  GroupDefinition d;
  d.kind = kind.get<std::string>();
  const auto prime = as_int(field(j, "prime"), "prime");
  if (prime < 0 || prime > 1000000) parse_fail("prime out of range");
  d.prime = static_cast<std::uint32_t>(prime);
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) parse_fail("label must be a string");
    d.label = it->get<std::string>();
  }

  if (d.kind == "pc") {
    only_fields(j, {"format", "kind", "prime", "label", "ngens", "powers", "conjugates"});
    d.pc.prime = d.prime;
    d.pc.ngens = as_small_int(field(j, "ngens"), "ngens");
    if (d.pc.ngens < 0) parse_fail("ngens must be non-negative");
    if (auto it = j.find("powers"); it != j.end()) {
      if (!it->is_object()) parse_fail("powers must be an object");
      for (const auto& [k, v] : it->items()) d.pc.powers[parse_index(k, "powers") - 1] = as_word(v, "powers." + k);
    }
    if (auto it = j.find("conjugates"); it != j.end()) {
      if (!it->is_object()) parse_fail("conjugates must be an object");
      for (const auto& [k, v] : it->items()) {
        auto comma = k.find(',');
        if (comma == std::string::npos) parse_fail("conjugates key \"" + k + "\" must be \"j,i\"");
        int jj = parse_index(k.substr(0, comma), "conjugates");
        int ii = parse_index(k.substr(comma + 1), "conjugates");
        d.pc.conjugates[{jj - 1, ii - 1}] = as_word(v, "conjugates." + k);
      }
    }
  } else if (d.kind == "abelian") {
    only_fields(j, {"format", "kind", "prime", "label", "exponents"});
    d.exponents = as_int_list(field(j, "exponents"), "exponents");
  } else if (d.kind == "unitriangular") {
    only_fields(j, {"format", "kind", "prime", "label", "n", "m"});
    d.n = as_small_int(field(j, "n"), "n");
    d.m = as_small_int(field(j, "m"), "m");
  } else if (d.kind == "semidirect") {
    only_fields(j, {"format", "kind", "prime", "label", "module", "alpha", "t"});
    d.semidirect.module = as_int_list(field(j, "module"), "module");
    d.semidirect.t = as_small_int(field(j, "t"), "t");
    const Json& alpha = field(j, "alpha");
    if (!alpha.is_array()) parse_fail("alpha must be an array of exponent vectors");
    for (const auto& row : alpha) {
      auto r = as_int_list(row, "alpha");
      if (r.size() != d.semidirect.module.size()) parse_fail("alpha rows must have one entry per module generator");
      std::vector<std::uint64_t> c;
      for (int x : r) {
        if (x < 0) parse_fail("alpha entries must be non-negative");
        c.push_back(static_cast<std::uint64_t>(x));
      }
      d.semidirect.alpha.push_back(std::move(c));
    }
  } else if (d.kind == "catalog") {
    only_fields(j, {"format", "kind", "prime", "label", "name", "params"});
    const Json& name = field(j, "name");
    if (!name.is_string()) parse_fail("name must be a string");
    d.catalog.name = name.get<std::string>();
    if (auto it = j.find("params"); it != j.end()) {
      if (!it->is_object()) parse_fail("params must be an object");
      for (const auto& [k, v] : it->items()) {
        if (k == "prime") parse_fail("prime belongs at the top level");
        d.catalog.params[k] = v.is_array() ? as_int_list(v, "params." + k)
                                           : std::vector<int>{as_small_int(v, "params." + k)};
      }
    }
  } else {
    parse_fail("unknown kind \"" + d.kind + "\"");
  }
  return d;
}

inline GroupDefinition parse_definition(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return definition_from_json(j);
}

inline Json definition_to_json(const GroupDefinition& d) {
  Json j;
  j["format"] = kFormatTag;
  j["kind"] = d.kind;
  j["prime"] = d.prime;
  if (d.label) j["label"] = *d.label;
  if (d.kind == "pc") {
    j["ngens"] = d.pc.ngens;
    Json powers = Json::object();
    for (const auto& [i, w] : d.pc.powers) powers[std::to_string(i + 1)] = detail::word_json(w);
    Json conj = Json::object();
    for (const auto& [key, w] : d.pc.conjugates)
      conj[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] = detail::word_json(w);
    j["powers"] = powers;
    j["conjugates"] = conj;
  } else if (d.kind == "abelian") {
    j["exponents"] = d.exponents;
  } else if (d.kind == "unitriangular") {
    j["n"] = d.n;
    j["m"] = d.m;
  } else if (d.kind == "semidirect") {
    j["module"] = d.semidirect.module;
    j["alpha"] = d.semidirect.alpha;
    j["t"] = d.semidirect.t;
  } else if (d.kind == "catalog") {
    j["name"] = d.catalog.name;
    Json params = Json::object();
    for (const auto& [k, v] : d.catalog.params) {
      if (k == "prime") continue;
      params[k] = v.size() == 1 && k != "type" ? Json(v.front()) : Json(v);
    }
    j["params"] = params;
  }
  return j;
}

// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline FiniteGroup build_definition(const GroupDefinition& d) {
  FiniteGroup G;
  if (d.kind == "pc") {
    PcPresentation pres = d.pc;
    pres.prime = Prime(d.prime);
    G = build_from_pc(pres, "pc");
  } else if (d.kind == "abelian") {
    G = build_abelian(Prime(d.prime), d.exponents);
  } else if (d.kind == "unitriangular") {
    G = build_unitriangular(d.n, Prime(d.prime), d.m);
  } else if (d.kind == "semidirect") {
    FiniteGroup M = build_abelian(Prime(d.prime), d.semidirect.module);
    for (const auto& row : d.semidirect.alpha)
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] >= ipow(d.prime, static_cast<std::uint64_t>(d.semidirect.module[i])))
          throw Error(ErrorKind::NotAutomorphism, "alpha coordinate exceeds generator order");
    if (d.semidirect.alpha.size() != d.semidirect.module.size())
      throw Error(ErrorKind::NotAutomorphism, "alpha needs one image per module generator");
    G = build_semidirect(M, detail::images_from_coords(M, d.semidirect.alpha), d.semidirect.t, "semidirect");
  } else if (d.kind == "catalog") {
    CatalogParams ps = d.catalog.params;
    ps["prime"] = {static_cast<int>(d.prime)};
    G = catalog_build(d.catalog.name, ps);
  } else {
    throw Error(ErrorKind::ParseError, "unknown kind \"" + d.kind + "\"");
  }
  return d.label ? G.with_label(*d.label) : G;
}

inline GroupDefinition catalog_definition(const CatalogRef& ref) {
  GroupDefinition d;
  d.kind = "catalog";
  auto it = ref.params.find("prime");
  d.prime = it == ref.params.end() ? 3u : static_cast<std::uint32_t>(it->second.at(0));
  d.catalog.name = ref.name;
  for (const auto& [k, v] : ref.params)
    if (k != "prime") d.catalog.params[k] = v;
  return d;
}

}  // namespace pgroup
