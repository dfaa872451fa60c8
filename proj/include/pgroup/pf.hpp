#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "eta.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "subgroup.hpp"

namespace pgroup {

// gamma_{p-1}(G) <= G^p
inline bool is_potent(const FiniteGroup& G) {
  const Subgroup W = whole_group(G);
  const Subgroup g = iterated_commutator(G, W, static_cast<int>(G.prime()) - 2);
  return g.is_subgroup_of(power_subgroup(G, W, 1));
}

// G^(p^i) consists of p^i-th powers.
inline bool is_power_surjective(const FiniteGroup& G, int i) {
  const Subgroup W = whole_group(G);
  return power_subgroup(G, W, i).set() == power_image(G, W, i);
}

// A descending chain N = N_1 >= ... >= N_r = 1 of normal subgroups with
// [N_i, G] <= N_{i+1} and [N_i, G, ..., G] (p-1 copies) <= N_{i+1}^p.
struct PotentFiltration {
  FiniteGroup group;
  std::vector<Subgroup> terms;
};

// Empty string when valid, otherwise what failed.
inline std::string potent_filtration_defect(const FiniteGroup& G, const std::vector<Subgroup>& terms) {
  if (terms.empty()) return "empty filtration";
  if (!terms.back().is_trivial()) return "last term is not trivial";
  const int p = static_cast<int>(G.prime());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!is_normal(G, terms[i])) return "term " + std::to_string(i + 1) + " is not normal";
    if (i + 1 == terms.size()) break;
    const Subgroup& A = terms[i];
    const Subgroup& B = terms[i + 1];
    if (!B.is_subgroup_of(A)) return "not descending at term " + std::to_string(i + 1);
    if (!commutator_with_group(G, A).is_subgroup_of(B))
      return "not central at term " + std::to_string(i + 1);
    if (!iterated_commutator(G, A, p - 1).is_subgroup_of(power_subgroup(G, B, 1)))
      return "potency condition fails at term " + std::to_string(i + 1);
  }
  return {};
}

// Exact reachability over the normal-subgroup DAG with edges K -> M for
// M < K, [K, G] <= M and [K, _{p-1} G] <= M^p.
class PfSearch {
 public:
  explicit PfSearch(const NormalLattice& L) : L_(L), state_(L.size(), kUnknown), next_(L.size(), 0), deep_(L.size()) {}

  std::optional<PotentFiltration> filtration_of(const Subgroup& N) {
    const std::size_t n = L_.index_of(N);
    if (!reaches_trivial(n)) return std::nullopt;
    PotentFiltration f{L_.group(), {}};
    std::size_t k = n;
    f.terms.push_back(L_[k]);
    while (k != L_.trivial_index()) {
      k = next_[k];
      f.terms.push_back(L_[k]);
    }
    return f;
  }

 private:
  enum : char { kUnknown, kYes, kNo };

  const Subgroup& deep_commutator(std::size_t k) {
    if (!deep_[k])
      deep_[k] = iterated_commutator(L_.group(), L_[k], static_cast<int>(L_.group().prime()) - 1);
    return *deep_[k];
  }

  bool reaches_trivial(std::size_t k) {
    if (k == L_.trivial_index()) return true;
    if (state_[k] != kUnknown) return state_[k] == kYes;
    const Subgroup& K = L_[k];
    const Subgroup& C = L_.commutator(k);
    const Subgroup& D = deep_commutator(k);
    // Larger targets first: a witness tends to descend slowly.
    for (std::size_t m = L_.size(); m-- > 0;) {
      const Subgroup& M = L_[m];
      if (M.order() >= K.order() || !M.is_subgroup_of(K) || !C.is_subgroup_of(M)) continue;
      if (!D.is_subgroup_of(L_.power(m))) continue;
      if (reaches_trivial(m)) {
        state_[k] = kYes;
        next_[k] = m;
        return true;
      }
    }
    state_[k] = kNo;
    return false;
  }

  const NormalLattice& L_;
  std::vector<char> state_;
  std::vector<std::size_t> next_;
  std::vector<std::optional<Subgroup>> deep_;
};

inline std::optional<PotentFiltration> is_pf_embedded(const NormalLattice& L, const Subgroup& N) {
  return PfSearch(L).filtration_of(N);
}

inline std::optional<PotentFiltration> is_pf_embedded(const FiniteGroup& G, const Subgroup& N,
                                                      std::size_t budget = kDefaultNormalBudget) {
  if (!is_normal(G, N)) throw Error(ErrorKind::NotNormal, "PF-embedding needs a normal subgroup");
  NormalLattice L(G, budget);
  return is_pf_embedded(L, N);
}

inline std::optional<PotentFiltration> is_pf_group(const FiniteGroup& G, std::size_t budget = kDefaultNormalBudget) {
  NormalLattice L(G, budget);
  return is_pf_embedded(L, L[L.whole_index()]);
}

// Potent filtration built from an eta-series 1 = N_0 <= ... <= N_l = N with
// l <= p-1: M_1 = N, M_{i+1} = M_i^p N_{p-i-1}, where N_j = 1 for j < 0 and
// N_j = N for j >= l. Repeated terms are dropped; the result is validated.
inline PotentFiltration small_height_filtration(const FiniteGroup& G, const Subgroup& N,
                                                const SubgroupSeries& eta_series) {
  const int p = static_cast<int>(G.prime());
  const auto& s = eta_series.terms;
  if (s.empty() || !(s.back() == N) || !is_eta_series(G, eta_series))
    throw Error(ErrorKind::NotAnEtaSeries, "input is not an eta-series ending in N");
  const int len = static_cast<int>(s.size()) - 1;
  if (len > p - 1) throw Error(ErrorKind::NotAnEtaSeries, "eta-series longer than p-1");

  const Subgroup one = trivial_subgroup(G);
  auto term = [&](int j) -> const Subgroup& {
    if (j < 0) return one;
    if (j >= len) return N;
    return s[static_cast<std::size_t>(j)];
  };

  std::vector<Subgroup> M{N};
  for (int i = 1; !M.back().is_trivial(); ++i) {
    Subgroup next = join(power_subgroup(G, M.back(), 1), term(p - i - 1));
    if (!(next == M.back())) {
      M.push_back(std::move(next));
    } else if (p - i - 1 < 0) {
      throw Error(ErrorKind::ValidationFailed, "power series stalls above the trivial subgroup");
    }
  }
  if (auto defect = potent_filtration_defect(G, M); !defect.empty())
    throw Error(ErrorKind::ValidationFailed, defect + " in " + G.label());
  return PotentFiltration{G, std::move(M)};
}

struct OmegaRow {
  int i = 0;
  int log_order = 0;     // log_p |Omega_i|
  int log_exponent = 0;  // log_p exp Omega_i
  int log_bound = 0;     // i + l
  bool changed = false;  // Omega_i != Omega_{i-1}
};

struct OmegaTable {
  int powerful_class = 0;
  int ell = 0;
  std::vector<OmegaRow> rows;
};

// With k = pwc(G) and l the least integer with k <= l(p-1), checks
// exp Omega_i(G) <= p^(i+l) for i = 1 .. log_p exp G.
inline OmegaTable omega_exponent_check(const FiniteGroup& G, int pwc) {
  const int p = static_cast<int>(G.prime());
  OmegaTable t;
  t.powerful_class = pwc;
  t.ell = (pwc + (p - 2)) / (p - 1);
  int prev_order = 0;
  for (int i = 1; i <= G.log_exponent(); ++i) {
    Subgroup O = omega_subgroup(G, i);
    int e = 0;
    for (Elem x : O.elements()) e = std::max(e, G.element_log_order(x));
    OmegaRow row{i, O.log_order(), e, i + t.ell, O.log_order() != prev_order};
    prev_order = row.log_order;
    if (row.log_exponent > row.log_bound)
      throw Error(ErrorKind::TheoremViolated, "exp Omega_" + std::to_string(i) + " = p^" + std::to_string(e) +
                                                  " exceeds p^" + std::to_string(row.log_bound) + " in " +
                                                  G.label());
    t.rows.push_back(row);
  }
  return t;
}

inline OmegaTable omega_exponent_check(const FiniteGroup& G) { return omega_exponent_check(G, powerful_class(G)); }

}  // namespace pgroup
