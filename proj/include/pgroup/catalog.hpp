#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "builders.hpp"
#include "core.hpp"
#include "group.hpp"
#include "pc.hpp"
#include "subgroup.hpp"

namespace pgroup {

// Named integer-list parameters, e.g. {"prime": {3}, "type": {2, 1}}.
using CatalogParams = std::map<std::string, std::vector<int>>;

struct CatalogEntryInfo {
  std::string name;
  std::string description;
  std::vector<std::string> params;  // accepted keys besides "prime"
};

inline const std::vector<CatalogEntryInfo>& catalog_entries() {
  static const std::vector<CatalogEntryInfo> entries{
      {"abelian", "direct product of cyclic groups C_{p^e1} x ... (type=e1,e2,...)", {"type"}},
      {"heisenberg", "nonabelian group of order p^3 and exponent p", {}},
      {"kirillov_quotient", "(Z/p^e)^p extended by alpha of order p^e, [x_{p-1},alpha] = x_p^p", {"e"}},
      {"mainline_coclass1", "C_p acting on Z[zeta_p]/lambda^k, order p^(k+1)", {"k"}},
      {"mann_nonpf", "C_{p^2} acting on C_p^p by [x_i,alpha] = x_{i+1}; order p^(p+2)", {}},
      {"modular", "<a,b | a^(p^2) = b^p = 1, a^b = a^(1+p)>, order p^3", {}},
      {"order27", "the five groups of order 27 (index=0..4)", {"index"}},
      {"potent_nopwc", "C_{p^n} acting on C_{p^(n+1)} x C_{p^n}^(p-3), p > 3", {"n"}},
      {"unitriangular", "UT_n(Z/p^m)", {"n", "m"}},
      {"wreath", "C_p wr C_p, order p^(p+1)", {}},
  };
  return entries;
}

inline std::vector<std::string> catalog_list() {
  std::vector<std::string> names;
  for (const auto& e : catalog_entries()) names.push_back(e.name);
  return names;
}

// p = 3 wherever the construction allows it.
inline std::uint32_t catalog_default_prime(const std::string& name) { return name == "potent_nopwc" ? 5 : 3; }

namespace detail {

inline int param(const CatalogParams& ps, const std::string& key, int fallback) {
  auto it = ps.find(key);
  if (it == ps.end()) return fallback;
  if (it->second.size() != 1) throw Error(ErrorKind::ParamOutOfRange, "parameter " + key + " takes one value");
  return it->second.front();
}

inline std::string params_label(const std::string& name, const CatalogParams& ps) {
  std::string s = name + "(";
  bool first = true;
  for (const auto& [k, v] : ps) {
    s += (first ? "" : ",") + k + "=";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + std::to_string(v[i]);
    first = false;
  }
  return s + ")";
}

// M = Z[lambda] / lambda^k with lambda = zeta_p - 1, as integer vectors in the
// basis 1, lambda, ..., lambda^(p-2) reduced modulo the Hermite normal form of
// the ideal lattice.
class LambdaAdicModule {
 public:
  LambdaAdicModule(int p, int k) : p_(p), d_(p - 1) {
    // lambda^(p-1) = -sum_{j=1}^{p-1} C(p, j) lambda^(j-1)
    relation_.assign(static_cast<std::size_t>(d_), 0);
    std::int64_t binom = 1;
    for (int j = 1; j <= p - 1; ++j) {
      binom = binom * (p - j + 1) / j;
      relation_[static_cast<std::size_t>(j - 1)] = -binom;
    }
    std::vector<std::vector<std::int64_t>> rows;
    Vec v(static_cast<std::size_t>(d_), 0);
    v[0] = 1;
    for (int i = 0; i < k; ++i) v = times_lambda(v);
    for (int i = 0; i < d_; ++i) {
      rows.push_back(v);
      v = times_lambda(v);
    }
    hnf_ = hermite(rows);
    for (int i = 0; i < d_; ++i) radix_.push_back(static_cast<std::uint64_t>(hnf_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]));
  }

  using Vec = std::vector<std::int64_t>;

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto r : radix_) o *= r;
    return o;
  }

  Vec times_lambda(const Vec& v) const {
    Vec out(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i + 1 < d_; ++i) out[static_cast<std::size_t>(i + 1)] = v[static_cast<std::size_t>(i)];
    const std::int64_t top = v[static_cast<std::size_t>(d_ - 1)];
    for (int i = 0; i < d_; ++i) out[static_cast<std::size_t>(i)] += top * relation_[static_cast<std::size_t>(i)];
    return out;
  }

  Vec reduce(Vec v) const {
    for (int i = 0; i < d_; ++i) {
      const auto& row = hnf_[static_cast<std::size_t>(i)];
      const std::int64_t h = row[static_cast<std::size_t>(i)];
      std::int64_t q = v[static_cast<std::size_t>(i)] / h;
      if (v[static_cast<std::size_t>(i)] - q * h < 0) --q;
      if (q != 0)
        for (int j = i; j < d_; ++j) v[static_cast<std::size_t>(j)] -= q * row[static_cast<std::size_t>(j)];
    }
    return v;
  }

  Elem encode(const Vec& v) const {
    Vec r = reduce(v);
    std::uint64_t idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * radix_[static_cast<std::size_t>(i)] + static_cast<std::uint64_t>(r[static_cast<std::size_t>(i)]);
    return static_cast<Elem>(idx);
  }

  Vec decode(std::uint64_t idx) const {
    Vec v(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx % radix_[static_cast<std::size_t>(i)]);
      idx /= radix_[static_cast<std::size_t>(i)];
    }
    return v;
  }

  Vec basis(int i) const {
    Vec v(static_cast<std::size_t>(d_), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
  }

  int dim() const { return d_; }

 private:
  // Upper triangular row basis with positive diagonal.
  static std::vector<Vec> hermite(std::vector<Vec> rows) {
    const std::size_t n = rows.size();
    for (std::size_t col = 0; col < n; ++col) {
      // Euclid on column `col` among rows col..n-1.
      for (;;) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
          if (rows[r][col] != 0 && (piv == n || std::llabs(rows[r][col]) < std::llabs(rows[piv][col]))) piv = r;
        if (piv == n) throw Error(ErrorKind::ValidationFailed, "ideal lattice is not of full rank");
        std::swap(rows[col], rows[piv]);
        bool done = true;
        for (std::size_t r = col + 1; r < n; ++r) {
          std::int64_t q = rows[r][col] / rows[col][col];
          if (q != 0)
            for (std::size_t j = col; j < n; ++j) rows[r][j] -= q * rows[col][j];
          if (rows[r][col] != 0) done = false;
        }
        if (done) break;
      }
      if (rows[col][col] < 0)
        for (auto& x : rows[col]) x = -x;
    }
    return rows;
  }

  int p_;
  int d_;
  Vec relation_;
  std::vector<Vec> hnf_;
  std::vector<std::uint64_t> radix_;
};

inline FiniteGroup heisenberg(Prime p) {
  PcPresentation pres;
  pres.prime = p;
  pres.ngens = 3;
  pres.conjugates[{1, 0}] = {{1, 1}, {2, 1}};  // g2^g1 = g2 g3
  return build_from_pc(pres, "heisenberg(" + std::to_string(p.value()) + ")");
}

// g1 = b, g2 = a, g3 = a^p: g2^p = g3, g2^g1 = g2 g3.
inline FiniteGroup modular(Prime p) {
  PcPresentation pres;
  pres.prime = p;
  pres.ngens = 3;
  pres.powers[1] = {{2, 1}};
  pres.conjugates[{1, 0}] = {{1, 1}, {2, 1}};
  return build_from_pc(pres, "modular(" + std::to_string(p.value()) + ")");
}

// Images of the generators x_1..x_k of an abelian group with coordinates
// mixed radix in the generator order: each image is a coordinate vector.
inline std::vector<Elem> images_from_coords(const FiniteGroup& M, const std::vector<std::vector<std::uint64_t>>& coords) {
  std::vector<Elem> out;
  const auto gens = M.generators();
  for (const auto& c : coords) {
    Elem e = kIdentity;
    for (std::size_t i = 0; i < c.size(); ++i) e = M.mul(e, M.pow(gens[i], c[i]));
    out.push_back(e);
  }
  return out;
}

inline FiniteGroup mann_nonpf(Prime p) {
  const int pp = static_cast<int>(p);
  FiniteGroup M = build_abelian(p, std::vector<int>(static_cast<std::size_t>(pp), 1));
  std::vector<std::vector<std::uint64_t>> coords;
  for (int i = 0; i < pp; ++i) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(pp), 0);
    c[static_cast<std::size_t>(i)] = 1;
    if (i + 1 < pp) c[static_cast<std::size_t>(i + 1)] = 1;  // x_i -> x_i x_{i+1}
    coords.push_back(c);
  }
  return build_semidirect(M, images_from_coords(M, coords), 2, "mann_nonpf(" + std::to_string(pp) + ")");
}

inline FiniteGroup potent_nopwc(Prime p, int n) {
  const int pp = static_cast<int>(p);
  if (pp <= 3) throw Error(ErrorKind::ParamOutOfRange, "potent_nopwc needs p > 3");
  if (n < 1) throw Error(ErrorKind::ParamOutOfRange, "potent_nopwc needs n >= 1");
  const int k = pp - 2;
  std::vector<int> exps(static_cast<std::size_t>(k), n);
  exps[0] = n + 1;
  FiniteGroup M = build_abelian(p, exps);
  std::vector<std::vector<std::uint64_t>> coords;
  for (int i = 0; i < k; ++i) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(k), 0);
    c[static_cast<std::size_t>(i)] = 1;
    if (i + 1 < k)
      c[static_cast<std::size_t>(i + 1)] = 1;  // [x_i, alpha] = x_{i+1}
    else
      c[0] = static_cast<std::uint64_t>(pp);  // [x_{p-2}, alpha] = x_1^p
    coords.push_back(c);
  }
  return build_semidirect(M, images_from_coords(M, coords), n,
                          "potent_nopwc(" + std::to_string(pp) + "," + std::to_string(n) + ")");
}

inline FiniteGroup kirillov_quotient(Prime p, int e) {
  const int pp = static_cast<int>(p);
  if (e < 1) throw Error(ErrorKind::ParamOutOfRange, "kirillov_quotient needs e >= 1");
  FiniteGroup M = build_abelian(p, std::vector<int>(static_cast<std::size_t>(pp), e));
  std::vector<std::vector<std::uint64_t>> coords;
  for (int i = 0; i < pp; ++i) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(pp), 0);
    c[static_cast<std::size_t>(i)] = 1;
    if (i + 2 < pp) c[static_cast<std::size_t>(i + 1)] = 1;                      // [x_i, alpha] = x_{i+1}
    if (i + 2 == pp) c[static_cast<std::size_t>(i + 1)] = static_cast<std::uint64_t>(pp);  // [x_{p-1}, alpha] = x_p^p
    coords.push_back(c);
  }
  return build_semidirect(M, images_from_coords(M, coords), e,
                          "kirillov_quotient(" + std::to_string(pp) + "," + std::to_string(e) + ")");
}

inline FiniteGroup mainline_coclass1(Prime p, int k) {
  if (k < 1) throw Error(ErrorKind::ParamOutOfRange, "mainline_coclass1 needs k >= 1");
  if (ipow(p, static_cast<std::uint64_t>(k + 1)) > kElementCap)
    throw Error(ErrorKind::SizeLimitExceeded, "mainline_coclass1 exceeds element cap");
  auto mod = std::make_shared<const LambdaAdicModule>(static_cast<int>(p), k);
  if (mod->order() != ipow(p, static_cast<std::uint64_t>(k)))
    throw Error(ErrorKind::OrderMismatch, "Z[lambda]/lambda^k has the wrong order");
  MulFn add = [mod](Elem a, Elem b) {
    auto x = mod->decode(a);
    auto y = mod->decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return mod->encode(x);
  };
  std::vector<Elem> gens;
  for (int i = 0; i < mod->dim(); ++i) gens.push_back(mod->encode(mod->basis(i)));
  FiniteGroup M = FiniteGroup::from_function(p, mod->order(), add, gens, "Z[lambda]/lambda^" + std::to_string(k));
  // zeta = 1 + lambda acting on the generators
  std::vector<Elem> images;
  for (int i = 0; i < mod->dim(); ++i) {
    auto b = mod->basis(i);
    auto lb = mod->times_lambda(b);
    for (std::size_t j = 0; j < b.size(); ++j) b[j] += lb[j];
    images.push_back(mod->encode(b));
  }
  FiniteGroup G = build_semidirect(M, images, 1,
                                   "mainline_coclass1(" + std::to_string(p.value()) + "," + std::to_string(k) + ")");
  if (nilpotency_class(G) != k)
    throw Error(ErrorKind::ValidationFailed, "mainline_coclass1 has class " + std::to_string(nilpotency_class(G)));
  return G;
}

inline FiniteGroup wreath(Prime p) {
  const int pp = static_cast<int>(p);
  FiniteGroup M = build_abelian(p, std::vector<int>(static_cast<std::size_t>(pp), 1));
  std::vector<std::vector<std::uint64_t>> coords;
  for (int i = 0; i < pp; ++i) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(pp), 0);
    c[static_cast<std::size_t>((i + 1) % pp)] = 1;
    coords.push_back(c);
  }
  return build_semidirect(M, images_from_coords(M, coords), 1, "wreath(" + std::to_string(pp) + ")");
}

inline FiniteGroup order27(int index) {
  Prime p(3);
  switch (index) {
    case 0: return build_abelian(p, {3});
    case 1: return build_abelian(p, {2, 1});
    case 2: return build_abelian(p, {1, 1, 1});
    case 3: return heisenberg(p);
    case 4: return modular(p);
    default: throw Error(ErrorKind::ParamOutOfRange, "order27 index must be 0..4");
  }
}

}  // namespace detail

inline FiniteGroup catalog_build(const std::string& name, const CatalogParams& params) {
  auto it = std::find_if(catalog_entries().begin(), catalog_entries().end(),
                         [&](const CatalogEntryInfo& e) { return e.name == name; });
  if (it == catalog_entries().end()) throw Error(ErrorKind::UnknownName, "no catalog entry named " + name);
  for (const auto& [k, v] : params)
    if (k != "prime" && std::find(it->params.begin(), it->params.end(), k) == it->params.end())
      throw Error(ErrorKind::ParamOutOfRange, "entry " + name + " takes no parameter " + k);

  const int pv = detail::param(params, "prime", static_cast<int>(catalog_default_prime(name)));
  if (pv < 0) throw Error(ErrorKind::NotOddPrime, std::to_string(pv) + " is not an odd prime");
  const Prime p(static_cast<std::uint64_t>(pv));
  const std::string label = detail::params_label(name, params);
  FiniteGroup G;
  if (name == "abelian") {
    auto t = params.find("type");
    std::vector<int> type = t == params.end() ? std::vector<int>{1} : t->second;
    if (type.empty()) throw Error(ErrorKind::ParamOutOfRange, "abelian type must be non-empty");
    G = build_abelian(p, type);
  } else if (name == "heisenberg") {
    G = detail::heisenberg(p);
  } else if (name == "modular") {
    G = detail::modular(p);
  } else if (name == "order27") {
    if (p.value() != 3) throw Error(ErrorKind::ParamOutOfRange, "order27 is defined for p = 3");
    G = detail::order27(detail::param(params, "index", 0));
  } else if (name == "unitriangular") {
    G = build_unitriangular(detail::param(params, "n", 3), p, detail::param(params, "m", 1));
  } else if (name == "mann_nonpf") {
    G = detail::mann_nonpf(p);
  } else if (name == "potent_nopwc") {
    G = detail::potent_nopwc(p, detail::param(params, "n", 1));
  } else if (name == "kirillov_quotient") {
    G = detail::kirillov_quotient(p, detail::param(params, "e", 2));
  } else if (name == "mainline_coclass1") {
    G = detail::mainline_coclass1(p, detail::param(params, "k", 2));
  } else if (name == "wreath") {
    G = detail::wreath(p);
  }
  return G.with_label(label);
}

// A concrete catalog instance.
struct CatalogRef {
  std::string name;
  CatalogParams params;

  std::string label() const { return detail::params_label(name, params); }
  FiniteGroup build() const { return catalog_build(name, params); }
};

inline CatalogRef make_ref(std::string name, int prime, CatalogParams extra = {}) {
  extra["prime"] = {prime};
  return {std::move(name), std::move(extra)};
}

// The instances the verification suites run over, with their orders as
// (prime, log order), sorted by name and then parameters.
struct CatalogInstance {
  CatalogRef ref;
  std::uint32_t prime;
  int log_order;
};

inline std::vector<CatalogInstance> catalog_instances() {
  std::vector<CatalogInstance> v{
      {make_ref("abelian", 3, {{"type", {1}}}), 3, 1},
      {make_ref("abelian", 3, {{"type", {1, 1}}}), 3, 2},
      {make_ref("abelian", 3, {{"type", {2}}}), 3, 2},
      {make_ref("abelian", 3, {{"type", {1, 1, 1}}}), 3, 3},
      {make_ref("abelian", 3, {{"type", {2, 1}}}), 3, 3},
      {make_ref("abelian", 3, {{"type", {3}}}), 3, 3},
      {make_ref("abelian", 3, {{"type", {2, 1, 1}}}), 3, 4},
      {make_ref("abelian", 3, {{"type", {2, 2}}}), 3, 4},
      {make_ref("abelian", 3, {{"type", {3, 2}}}), 3, 5},
      {make_ref("abelian", 5, {{"type", {1, 1}}}), 5, 2},
      {make_ref("abelian", 5, {{"type", {2, 1}}}), 5, 3},
      {make_ref("heisenberg", 3), 3, 3},
      {make_ref("heisenberg", 5), 5, 3},
      {make_ref("kirillov_quotient", 3, {{"e", {1}}}), 3, 4},
      {make_ref("kirillov_quotient", 3, {{"e", {2}}}), 3, 8},
      {make_ref("mainline_coclass1", 3, {{"k", {2}}}), 3, 3},
      {make_ref("mainline_coclass1", 3, {{"k", {3}}}), 3, 4},
      {make_ref("mainline_coclass1", 3, {{"k", {4}}}), 3, 5},
      {make_ref("mainline_coclass1", 3, {{"k", {5}}}), 3, 6},
      {make_ref("mainline_coclass1", 3, {{"k", {6}}}), 3, 7},
      {make_ref("mainline_coclass1", 5, {{"k", {3}}}), 5, 4},
      {make_ref("mann_nonpf", 3), 3, 5},
      {make_ref("modular", 3), 3, 3},
      {make_ref("modular", 5), 5, 3},
      {make_ref("potent_nopwc", 5, {{"n", {1}}}), 5, 5},
      {make_ref("unitriangular", 3, {{"n", {3}}, {"m", {1}}}), 3, 3},
      {make_ref("unitriangular", 3, {{"n", {3}}, {"m", {2}}}), 3, 6},
      {make_ref("unitriangular", 3, {{"n", {4}}, {"m", {1}}}), 3, 6},
      {make_ref("unitriangular", 5, {{"n", {3}}, {"m", {1}}}), 5, 3},
      {make_ref("wreath", 3), 3, 4},
  };
  for (int i = 0; i < 5; ++i) v.push_back({make_ref("order27", 3, {{"index", {i}}}), 3, 3});
  std::sort(v.begin(), v.end(), [](const CatalogInstance& a, const CatalogInstance& b) {
    if (a.ref.name != b.ref.name) return a.ref.name < b.ref.name;
    return a.ref.params < b.ref.params;
  });
  return v;
}

inline std::uint64_t instance_order(const CatalogInstance& c) {
  return ipow(c.prime, static_cast<std::uint64_t>(c.log_order));
}

}  // namespace pgroup
