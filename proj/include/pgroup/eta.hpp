#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "subgroup.hpp"

namespace pgroup {

// [N, G] <= N^p for normal N.
inline bool is_powerfully_embedded(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw Error(ErrorKind::NotNormal, "powerfully embedded test needs a normal subgroup");
  return commutator_with_group(G, N).is_subgroup_of(power_subgroup(G, N, 1));
}

inline bool is_powerful(const FiniteGroup& G) { return is_powerfully_embedded(G, whole_group(G)); }

// The largest powerfully embedded subgroup, as the join of every powerfully
// embedded normal subgroup.
inline Subgroup eta(const NormalLattice& L) {
  const FiniteGroup& G = L.group();
  Subgroup E = L[L.trivial_index()];
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.embedded(i)) E = join(E, L[i]);
  if (!is_powerfully_embedded(G, E))
    throw Error(ErrorKind::ValidationFailed, "join of powerfully embedded subgroups is not powerfully embedded");
  if (!center(G).is_subgroup_of(E))
    throw Error(ErrorKind::ValidationFailed, "eta(G) does not contain Z(G)");
  return E;
}

inline Subgroup eta(const FiniteGroup& G, std::size_t budget = kDefaultNormalBudget) {
  return eta(NormalLattice(G, budget));
}

struct EtaStep {
  std::uint64_t quotient_order = 1;       // |G/eta_i|
  std::uint64_t eta_quotient_order = 1;   // |eta(G/eta_i)|, equal to |eta_{i+1} : eta_i|
};

struct EtaReport {
  SubgroupSeries series;
  int powerful_class = 0;
  std::vector<EtaStep> steps;
};

// eta_0 = 1 and eta_{i+1}/eta_i = eta(G/eta_i): computed in successive
// quotients and pulled back along the composed projection.
inline EtaReport upper_eta_series(const FiniteGroup& G, std::size_t budget = kDefaultNormalBudget) {
  EtaReport r;
  r.series.kind = SeriesKind::Eta;
  r.series.direction = Direction::Ascending;
  r.series.terms.push_back(trivial_subgroup(G));
  std::vector<Elem> id(G.order());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Elem>(i);
  GroupHom proj(G, G, std::move(id));
  FiniteGroup Q = G;
  while (Q.order() > 1) {
    Subgroup E = eta(Q, budget);
    r.steps.push_back({Q.order(), E.order()});
    r.series.terms.push_back(preimage(proj, E));
    auto [Q2, q] = quotient(Q, E);
    proj = proj.then(q);
    Q = Q2;
  }
  r.powerful_class = static_cast<int>(r.series.size()) - 1;
  return r;
}

inline int powerful_class(const FiniteGroup& G, std::size_t budget = kDefaultNormalBudget) {
  return upper_eta_series(G, budget).powerful_class;
}

// Every step N_{i+1}/N_i powerfully embedded in G/N_i, checked as
// [N_{i+1}, G] <= N_{i+1}^p N_i.
inline bool is_eta_series(const FiniteGroup& G, const SubgroupSeries& s) {
  if (s.terms.empty() || !s.terms.front().is_trivial()) return false;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Subgroup& K = s.terms[i];
    const Subgroup& M = s.terms[i + 1];
    if (!is_normal(G, M) || !K.is_subgroup_of(M)) return false;
    Subgroup rhs = join(power_subgroup(G, M, 1), K);
    if (!commutator_with_group(G, M).is_subgroup_of(rhs)) return false;
  }
  return true;
}

struct HeightResult {
  int height = 0;
  SubgroupSeries series;             // the greedy relative eta-series
  std::optional<int> oracle_height;  // set when the shortest-path check ran
};

// Groups up to this order get the shortest-path cross-check of powerful height.
inline constexpr std::uint64_t kHeightOracleCap = 729;

// Length of a shortest eta-series 1 = K_0 < ... < K_h = N over
// the normal-subgroup lattice.
inline int powerful_height_bfs(const NormalLattice& L, std::size_t n_idx) {
  const Subgroup& N = L[n_idx];
  std::vector<int> dist(L.size(), -1);
  std::deque<std::size_t> queue{L.trivial_index()};
  dist[L.trivial_index()] = 0;
  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    if (k == n_idx) return dist[k];
    for (std::size_t m = 0; m < L.size(); ++m) {
      if (dist[m] >= 0 || m == k) continue;
      if (!L[k].is_subgroup_of(L[m]) || !L[m].is_subgroup_of(N)) continue;
      if (L.embedded_mod(m, k)) {
        dist[m] = dist[k] + 1;
        queue.push_back(m);
      }
    }
  }
  throw Error(ErrorKind::ValidationFailed, "normal subgroup has no eta-series");
}

// Greedy fastest-growing relative eta-series of N: K_{i+1} is the join of all
// normal M with K_i <= M <= N and M/K_i powerfully embedded in G/K_i.
inline HeightResult powerful_height(const NormalLattice& L, const Subgroup& N, bool run_oracle) {
  const FiniteGroup& G = L.group();
  const std::size_t n_idx = L.index_of(N);
  HeightResult r;
  r.series.kind = SeriesKind::Custom;
  r.series.terms.push_back(L[L.trivial_index()]);
  std::size_t k = L.trivial_index();
  while (k != n_idx) {
    Subgroup next = L[k];
    for (std::size_t m = 0; m < L.size(); ++m)
      if (L[k].is_subgroup_of(L[m]) && L[m].is_subgroup_of(N) && L.embedded_mod(m, k)) next = join(next, L[m]);
    std::size_t nk = L.index_of(next);
    if (nk == k) throw Error(ErrorKind::ValidationFailed, "relative eta-series stalls before reaching N");
    if (!L.embedded_mod(nk, k))
      throw Error(ErrorKind::ValidationFailed, "greedy step is not powerfully embedded");
    r.series.terms.push_back(L[nk]);
    k = nk;
  }
  r.height = static_cast<int>(r.series.size()) - 1;
  if (run_oracle) {
    r.oracle_height = powerful_height_bfs(L, n_idx);
    if (*r.oracle_height != r.height)
      throw Error(ErrorKind::GreedyOracleMismatch,
                  "greedy height " + std::to_string(r.height) + " vs shortest " +
                      std::to_string(*r.oracle_height) + " in " + G.label());
  }
  return r;
}

inline HeightResult powerful_height(const NormalLattice& L, const Subgroup& N) {
  return powerful_height(L, N, L.group().order() <= kHeightOracleCap);
}

inline int powerful_height(const FiniteGroup& G, const Subgroup& N, std::size_t budget = kDefaultNormalBudget) {
  if (!is_normal(G, N)) throw Error(ErrorKind::NotNormal, "powerful height needs a normal subgroup");
  return powerful_height(NormalLattice(G, budget), N).height;
}

struct ShalevReport {
  bool applicable = false;
  int log_order = 0;
  int nilpotency_class = 0;
  int coclass = 0;
  std::uint64_t m = 0;  // p^r - p^(r-1)
  int s = -1;
  std::uint64_t d = 0;  // (p-1) p^s
  bool uniserial = false;
  // (i, gamma_i^p == gamma_{i+d}) for i = m .. class+1
  std::vector<std::pair<int, bool>> power_checks;
};

// Uniserial action of G on gamma_m(G) and gamma_i^p = gamma_{i+d} for i >= m,
// tested on groups of coclass r with |G| >= p^(2p^r + r).
inline ShalevReport verify_shalev(const FiniteGroup& G, const NormalLattice* lattice = nullptr) {
  ShalevReport rep;
  const std::uint64_t p = G.prime();
  auto lcs = lower_central_series(G);
  rep.log_order = G.log_order();
  rep.nilpotency_class = static_cast<int>(lcs.size()) - 1;
  rep.coclass = rep.log_order - rep.nilpotency_class;
  const auto r = static_cast<std::uint64_t>(rep.coclass);
  const std::uint64_t pr = ipow(p, r);
  if (r == 0 || pr == UINT64_MAX) return rep;
  rep.m = pr - pr / p;
  const std::uint64_t threshold = 2 * pr + r;
  rep.applicable = static_cast<std::uint64_t>(rep.log_order) >= threshold;
  if (!rep.applicable) return rep;

  const int c = rep.nilpotency_class;
  const int m = static_cast<int>(rep.m);
  for (int s = 0; s < static_cast<int>(r); ++s) {
    const auto d = static_cast<int>((p - 1) * ipow(p, static_cast<std::uint64_t>(s)));
    std::vector<std::pair<int, bool>> checks;
    bool all = true;
    for (int i = m; i <= c + 1; ++i) {
      bool ok = power_subgroup(G, gamma(lcs, i), 1) == gamma(lcs, i + d);
      checks.emplace_back(i, ok);
      all = all && ok;
    }
    if (all) {
      rep.s = s;
      rep.d = static_cast<std::uint64_t>(d);
      rep.power_checks = std::move(checks);
      break;
    }
  }
  if (rep.s < 0) throw Error(ErrorKind::NoValidS, "no s satisfies gamma_i^p = gamma_{i+d} in " + G.label());

  std::optional<NormalLattice> own;
  if (!lattice) lattice = &own.emplace(G);
  const Subgroup gm = gamma(lcs, m);
  rep.uniserial = true;
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    const Subgroup& H = (*lattice)[i];
    if (H.is_trivial() || !H.is_subgroup_of(gm)) continue;
    if (H.order() != p * lattice->commutator(i).order()) {
      rep.uniserial = false;
      break;
    }
  }
  return rep;
}

// |G| <= p^(k+r+m-1), required only when |G| >= p^(2p^r + r).
inline bool pwccoclass_bound_check(const FiniteGroup& G, int pwc) {
  const std::uint64_t p = G.prime();
  const int n = G.log_order();
  const int c = nilpotency_class(G);
  const auto r = static_cast<std::uint64_t>(n - c);
  if (r == 0) return true;
  const std::uint64_t pr = ipow(p, r);
  if (pr == UINT64_MAX) return true;
  if (static_cast<std::uint64_t>(n) < 2 * pr + r) return true;
  const std::uint64_t m = pr - pr / p;
  return static_cast<std::uint64_t>(n) <= static_cast<std::uint64_t>(pwc) + r + m - 1;
}

inline bool pwccoclass_bound_check(const FiniteGroup& G) { return pwccoclass_bound_check(G, powerful_class(G)); }

// Necessary conditions for G = P/eta(P): not non-trivially cyclic, and
// elementary abelian if abelian. Returns the violated condition, if any.
inline std::optional<std::string> eta_capability_obstruction(const FiniteGroup& G) {
  if (G.order() == 1) return std::nullopt;
  if (rank(G) == 1) return "non-trivial cyclic group";
  if (G.is_abelian() && G.log_exponent() > 1) return "abelian but not elementary abelian";
  return std::nullopt;
}

}  // namespace pgroup
