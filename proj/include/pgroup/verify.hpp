#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "builders.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "eta.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "pf.hpp"
#include "subgroup.hpp"

namespace pgroup {

enum class Outcome { Pass, Fail, Info };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "FAIL";
    case Outcome::Info: return "info";
  }
  return "?";
}

struct PropertyResult {
  std::string suite;
  std::string property;
  std::string anchor;
  std::string group;
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t max_order = 729;
  bool extended = false;
  std::uint64_t seed = 20240601;
  std::size_t budget = kDefaultNormalBudget;
  int random_series = 100;
  std::string data_dir;  // empty: PGROUP_DATA_DIR env var, then the build-time default
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"eta-lemmas", "small-pwc", "omega", "coclass", "catalog-regression"};
  return s;
}

// Catalog instances within the order limit. --extended adds the order 3^7 and
// 5^5 entries regardless of the limit.
inline std::vector<CatalogInstance> select_instances(const VerifyOptions& opt) {
  std::vector<CatalogInstance> out;
  for (auto& c : catalog_instances()) {
    std::uint64_t cap = opt.max_order;
    if (opt.extended) cap = std::max<std::uint64_t>(cap, c.prime == 3 ? 2187 : c.prime == 5 ? 3125 : 0);
    if (instance_order(c) <= cap) out.push_back(c);
  }
  return out;
}

// Lazily computed invariants of one group, shared by all properties.
class GroupData {
 public:
  GroupData(std::string label, FiniteGroup G, std::size_t budget, std::optional<CatalogRef> ref = {})
      : label_(std::move(label)), G_(std::move(G)), budget_(budget), ref_(std::move(ref)) {}

  const std::string& label() const { return label_; }
  const FiniteGroup& G() const { return G_; }
  const std::optional<CatalogRef>& ref() const { return ref_; }
  std::size_t budget() const { return budget_; }
  std::uint32_t p() const { return G_.prime(); }

  const NormalLattice& lattice() {
    if (!lattice_) lattice_.emplace(G_, budget_);
    return *lattice_;
  }
  const EtaReport& eta_report() {
    if (!eta_) eta_ = upper_eta_series(G_, budget_);
    return *eta_;
  }
  int pwc() { return eta_report().powerful_class; }
  // eta_i(G), equal to G for i >= pwc
  const Subgroup& eta(int i) {
    const auto& t = eta_report().series.terms;
    return t[static_cast<std::size_t>(std::min<int>(i, static_cast<int>(t.size()) - 1))];
  }
  const SubgroupSeries& ucs() {
    if (!ucs_) ucs_ = upper_central_series(G_);
    return *ucs_;
  }
  const Subgroup& z(int i) {
    const auto& t = ucs().terms;
    return t[static_cast<std::size_t>(std::min<int>(i, static_cast<int>(t.size()) - 1))];
  }
  const SubgroupSeries& lcs() {
    if (!lcs_) lcs_ = lower_central_series(G_);
    return *lcs_;
  }
  int cls() { return static_cast<int>(lcs().size()) - 1; }
  const std::optional<PotentFiltration>& pf() {
    if (!pf_) pf_.emplace(is_pf_embedded(lattice(), lattice()[lattice().whole_index()]));
    return *pf_;
  }
  // Greedy relative eta-series heights of every normal subgroup, by lattice index.
  const std::vector<HeightResult>& heights() {
    if (!heights_) {
      heights_.emplace();
      for (std::size_t i = 0; i < lattice().size(); ++i) heights_->push_back(powerful_height(lattice(), lattice()[i], false));
    }
    return *heights_;
  }

 private:
  std::string label_;
  FiniteGroup G_;
  std::size_t budget_;
  std::optional<CatalogRef> ref_;
  std::optional<NormalLattice> lattice_;
  std::optional<EtaReport> eta_;
  std::optional<SubgroupSeries> ucs_, lcs_;
  std::optional<std::optional<PotentFiltration>> pf_;
  std::optional<std::vector<HeightResult>> heights_;
};

struct Check {
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

inline Check pass(std::string d = {}) { return {Outcome::Pass, std::move(d)}; }
inline Check fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
inline Check note(std::string d) { return {Outcome::Info, std::move(d)}; }

struct Property {
  std::string suite;
  std::string name;
  std::string anchor;
  std::function<bool(GroupData&)> applies;
  std::function<Check(GroupData&, const VerifyOptions&)> run;
};

namespace detail {

inline std::string pstr(std::uint32_t p, int e) { return std::to_string(p) + "^" + std::to_string(e); }

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline bool always(GroupData&) { return true; }

inline bool is_ref(GroupData& d, const std::string& name) { return d.ref() && d.ref()->name == name; }

// Brute-force normal subgroups: every subgroup is reached by adjoining one
// element at a time; normality is tested against all elements of G.
inline std::vector<ElemSet> brute_force_normal_subgroups(const FiniteGroup& G) {
  const auto n = static_cast<Elem>(G.order());
  std::vector<Subgroup> all{trivial_subgroup(G)};
  std::unordered_set<ElemSet, ElemSetHash> seen{all.front().set()};
  for (std::size_t h = 0; h < all.size(); ++h) {
    for (Elem x = 0; x < n; ++x) {
      if (all[h].contains(x)) continue;
      const Elem one[] = {x};
      Subgroup H = extend(all[h], one);
      if (seen.insert(H.set()).second) all.push_back(std::move(H));
    }
  }
  std::vector<ElemSet> normal;
  for (const auto& H : all) {
    bool ok = true;
    for (Elem h : H.elements()) {
      for (Elem g = 0; g < n && ok; ++g)
        if (!H.contains(G.conj(h, g))) ok = false;
      if (!ok) break;
    }
    if (ok) normal.push_back(H.set());
  }
  return normal;
}

// Smallest i with x^(p^i) = 1, by repeated multiplication only.
inline int naive_log_order(const FiniteGroup& G, Elem x) {
  int i = 0;
  while (x != kIdentity) {
    Elem y = kIdentity;
    for (std::uint32_t k = 0; k < G.prime(); ++k) y = G.mul(y, x);
    x = y;
    ++i;
  }
  return i;
}

inline std::vector<Property> build_properties() {
  std::vector<Property> P;
  auto add = [&](std::string suite, std::string name, std::string anchor, std::function<bool(GroupData&)> applies,
                 std::function<Check(GroupData&, const VerifyOptions&)> run) {
    P.push_back({std::move(suite), std::move(name), std::move(anchor), std::move(applies), std::move(run)});
  };

  // ---------------------------------------------------------------- eta-lemmas
  add("eta-lemmas", "eta-is-largest-powerfully-embedded",
      "eta(G) contains every powerfully embedded normal subgroup and Z(G)", always,
      [](GroupData& d, const VerifyOptions&) {
        const auto& L = d.lattice();
        const Subgroup& E = d.eta(1);
        if (!is_powerfully_embedded(d.G(), E)) return fail("eta(G) is not powerfully embedded");
        if (!center(d.G()).is_subgroup_of(E)) return fail("Z(G) not in eta(G)");
        int count = 0;
        for (std::size_t i = 0; i < L.size(); ++i) {
          if (!L.embedded(i)) continue;
          ++count;
          if (!L[i].is_subgroup_of(E)) return fail("a powerfully embedded subgroup escapes eta(G)");
        }
        return pass("|eta| = " + pstr(d.p(), E.log_order()) + ", " + std::to_string(count) + " powerfully embedded");
      });

  add("eta-lemmas", "eta-mod-power-is-center", "eta(G)/eta(G)^p = Z(G/eta(G)^p)", always,
      [](GroupData& d, const VerifyOptions&) {
        const Subgroup& E = d.eta(1);
        auto [Q, q] = quotient(d.G(), power_subgroup(d.G(), E, 1));
        if (!(preimage(q, center(Q)) == E)) return fail("preimage of the center differs from eta(G)");
        return pass();
      });

  add("eta-lemmas", "eta-step-mod-power-is-center",
      "eta_{k+1}/eta_{k+1}^p eta_k = Z(G/eta_{k+1}^p eta_k) for 0 <= k < pwc", always,
      [](GroupData& d, const VerifyOptions&) {
        for (int k = 0; k < d.pwc(); ++k) {
          const Subgroup& A = d.eta(k + 1);
          Subgroup K = join(power_subgroup(d.G(), A, 1), d.eta(k));
          auto [Q, q] = quotient(d.G(), K);
          if (!(preimage(q, center(Q)) == A)) return fail("fails at k = " + std::to_string(k));
        }
        return pass("k = 0.." + std::to_string(d.pwc() - 1));
      });

  add("eta-lemmas", "upper-central-below-eta", "Z_i(G) <= eta_i(G) for all i >= 0", always,
      [](GroupData& d, const VerifyOptions&) {
        for (int i = 0; i <= d.cls(); ++i)
          if (!d.z(i).is_subgroup_of(d.eta(i))) return fail("fails at i = " + std::to_string(i));
        return pass();
      });

  add("eta-lemmas", "pwc-at-most-class", "pwc(G) <= nilpotency class of G", always,
      [](GroupData& d, const VerifyOptions&) {
        std::string s = "pwc " + std::to_string(d.pwc()) + ", class " + std::to_string(d.cls());
        return d.pwc() <= d.cls() ? pass(s) : fail(s);
      });

  add("eta-lemmas", "eta-of-quotient-shifts", "eta_i(G/eta_j(G)) = eta_{i+j}(G)/eta_j(G)", always,
      [](GroupData& d, const VerifyOptions& o) {
        const int k = d.pwc();
        for (int j = 1; j < k; ++j) {
          auto [Q, q] = quotient(d.G(), d.eta(j));
          auto rq = upper_eta_series(Q, o.budget);
          if (rq.powerful_class != k - j) return fail("pwc(G/eta_" + std::to_string(j) + ") != pwc - j");
          for (int i = 0; i <= k - j; ++i)
            if (!(preimage(q, rq.series.terms[static_cast<std::size_t>(i)]) == d.eta(i + j)))
              return fail("fails at i = " + std::to_string(i) + ", j = " + std::to_string(j));
        }
        return pass();
      });

  add("eta-lemmas", "eta-term-height", "pwh(eta_i(G)) <= i", always, [](GroupData& d, const VerifyOptions&) {
    for (int i = 0; i <= d.pwc(); ++i) {
      int h = powerful_height(d.lattice(), d.eta(i)).height;
      if (h > i) return fail("pwh(eta_" + std::to_string(i) + ") = " + std::to_string(h));
    }
    return pass();
  });

  add("eta-lemmas", "eta-term-pwc", "pwc(eta_i(G)) <= i", always, [](GroupData& d, const VerifyOptions& o) {
    for (int i = 1; i < d.pwc(); ++i) {
      auto S = subgroup_as_group(d.eta(i)).first;
      int k = powerful_class(S, o.budget);
      if (k > i) return fail("pwc(eta_" + std::to_string(i) + ") = " + std::to_string(k));
    }
    return pass();
  });

  add("eta-lemmas", "eta-term-commutator", "[eta_i(G), _i G] <= eta_i(G)^p", always,
      [](GroupData& d, const VerifyOptions&) {
        for (int i = 1; i <= d.pwc(); ++i) {
          const Subgroup& E = d.eta(i);
          if (!iterated_commutator(d.G(), E, i).is_subgroup_of(power_subgroup(d.G(), E, 1)))
            return fail("fails at i = " + std::to_string(i));
        }
        return pass();
      });

  add("eta-lemmas", "eta-mod-eta-power", "eta_i(G/eta(G)^p) = eta_i(G)/eta(G)^p for i >= 1", always,
      [](GroupData& d, const VerifyOptions& o) {
        auto [Q, q] = quotient(d.G(), power_subgroup(d.G(), d.eta(1), 1));
        auto rq = upper_eta_series(Q, o.budget);
        const int top = std::max(d.pwc(), rq.powerful_class);
        for (int i = 1; i <= top; ++i) {
          const auto& t = rq.series.terms;
          const Subgroup& Qi = t[static_cast<std::size_t>(std::min<int>(i, static_cast<int>(t.size()) - 1))];
          if (!(preimage(q, Qi) == d.eta(i))) return fail("fails at i = " + std::to_string(i));
        }
        return pass();
      });

  add("eta-lemmas", "powerful-top-is-elementary", "G/eta(G) powerful implies G/eta(G) elementary abelian", always,
      [](GroupData& d, const VerifyOptions&) {
        auto Q = quotient(d.G(), d.eta(1)).first;
        if (!is_powerful(Q)) return pass("G/eta(G) not powerful");
        if (!Q.is_abelian() || Q.log_exponent() > 1) return fail("G/eta(G) powerful but not elementary abelian");
        return pass("G/eta(G) elementary abelian of order " + pstr(d.p(), Q.log_order()));
      });

  add("eta-lemmas", "frattini-below-eta-k-1", "Phi(G) <= eta_{k-1}(G) for k = pwc(G) >= 2",
      [](GroupData& d) { return d.pwc() >= 2; },
      [](GroupData& d, const VerifyOptions&) {
        return frattini(d.G()).is_subgroup_of(d.eta(d.pwc() - 1)) ? pass() : fail("Phi(G) not in eta_{k-1}");
      });

  add("eta-lemmas", "random-eta-series-below-upper", "every eta-series 1 = N_0 <= N_1 <= ... has N_i <= eta_i(G)",
      always, [](GroupData& d, const VerifyOptions& o) {
        const auto& L = d.lattice();
        std::mt19937_64 rng(o.seed ^ fnv1a(d.label()));
        std::map<std::size_t, std::vector<std::size_t>> steps;
        auto successors = [&](std::size_t k) -> const std::vector<std::size_t>& {
          auto it = steps.find(k);
          if (it != steps.end()) return it->second;
          std::vector<std::size_t> s;
          for (std::size_t m = 0; m < L.size(); ++m)
            if (m != k && L[k].is_subgroup_of(L[m]) && L.embedded_mod(m, k)) s.push_back(m);
          return steps.emplace(k, std::move(s)).first->second;
        };
        int longest = 0;
        for (int n = 0; n < o.random_series; ++n) {
          std::size_t k = L.trivial_index();
          int i = 0;
          while (k != L.whole_index()) {
            const auto& s = successors(k);
            if (s.empty()) return fail("no eta-series step above a proper normal subgroup");
            k = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
            ++i;
            if (!L[k].is_subgroup_of(d.eta(i))) return fail("N_" + std::to_string(i) + " not in eta_" + std::to_string(i));
          }
          longest = std::max(longest, i);
        }
        return pass(std::to_string(o.random_series) + " series, longest " + std::to_string(longest));
      });

  add("eta-lemmas", "order-p3-eta", "nonabelian |G| = p^3: exp p gives eta(G) = Z(G), exp p^2 gives eta(G) = G",
      [](GroupData& d) { return d.G().log_order() == 3 && !d.G().is_abelian(); },
      [](GroupData& d, const VerifyOptions&) {
        if (d.G().log_exponent() == 1)
          return d.eta(1) == center(d.G()) ? pass("exponent p, eta = Z") : fail("exponent p but eta != Z");
        return is_powerful(d.G()) && d.eta(1).is_whole() ? pass("exponent p^2, powerful")
                                                         : fail("exponent p^2 but not powerful");
      });

  add("eta-lemmas", "greedy-height-matches-bfs", "greedy relative eta-series length = shortest eta-series length",
      [](GroupData& d) { return d.G().order() <= kHeightOracleCap; },
      [](GroupData& d, const VerifyOptions&) {
        const auto& L = d.lattice();
        // one BFS from 1 gives shortest eta-series lengths for every normal subgroup
        std::vector<int> dist(L.size(), -1);
        std::deque<std::size_t> queue{L.trivial_index()};
        dist[L.trivial_index()] = 0;
        while (!queue.empty()) {
          std::size_t k = queue.front();
          queue.pop_front();
          for (std::size_t m = 0; m < L.size(); ++m)
            if (dist[m] < 0 && L[k].is_subgroup_of(L[m]) && L.embedded_mod(m, k)) {
              dist[m] = dist[k] + 1;
              queue.push_back(m);
            }
        }
        const auto& h = d.heights();
        for (std::size_t i = 0; i < L.size(); ++i)
          if (h[i].height != dist[i])
            return fail("normal subgroup #" + std::to_string(i) + ": greedy " + std::to_string(h[i].height) + " vs " +
                        std::to_string(dist[i]));
        return pass(std::to_string(L.size()) + " normal subgroups");
      });

  // ----------------------------------------------------------------- small-pwc
  auto small = [](GroupData& d) { return d.pwc() < static_cast<int>(d.p()); };

  add("small-pwc", "small-pwc-is-pf", "pwc(G) < p implies G is a PF-group", small,
      [](GroupData& d, const VerifyOptions&) {
        const auto& f = d.pf();
        if (!f) return fail("no potent filtration found");
        auto defect = potent_filtration_defect(d.G(), f->terms);
        return defect.empty() ? pass("filtration of length " + std::to_string(f->terms.size())) : fail(defect);
      });

  add("small-pwc", "small-pwc-power-structure", "pwc(G) < p implies G^p powerful and G^p = {x^p : x in G}", small,
      [](GroupData& d, const VerifyOptions&) {
        auto S = subgroup_as_group(power_subgroup(d.G(), whole_group(d.G()), 1)).first;
        if (!is_powerful(S)) return fail("G^p is not powerful");
        if (!is_power_surjective(d.G(), 1)) return fail("G^p contains a non-p-th power");
        return pass();
      });

  add("small-pwc", "two-generator-exponent", "G = <a,b>, pwc(G) < p, a^(p^e) = b^(p^e) = 1 imply G^(p^e) = 1",
      [small](GroupData& d) { return small(d) && rank(d.G()) == 2; },
      [](GroupData& d, const VerifyOptions&) {
        // A pair generates G iff it generates G/Phi(G). The bound fails iff two
        // elements of order below exp G generate G/Phi(G).
        const FiniteGroup& G = d.G();
        auto [Q, q] = quotient(G, frattini(G));
        std::vector<Elem> images;
        std::vector<char> seen(Q.order(), 0);
        for (Elem x = 0; x < G.order(); ++x)
          if (G.element_log_order(x) < G.log_exponent() && !seen[q(x)]) {
            seen[q(x)] = 1;
            images.push_back(q(x));
          }
        for (std::size_t i = 0; i < images.size(); ++i)
          for (std::size_t j = i + 1; j < images.size(); ++j)
            if (closure(Q, {images[i], images[j]}).is_whole())
              return fail("a generating pair of order below exp G exists");
        return pass("exp G = " + pstr(d.p(), G.log_exponent()));
      });

  add("small-pwc", "small-height-power-commutator", "pwh(N) < p implies [N^(p^k),G] = [N,G]^(p^k) <= [N,G^(p^k)]",
      always, [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const auto& L = d.lattice();
        const Subgroup W = whole_group(G);
        int tested = 0;
        for (std::size_t i = 0; i < L.size(); ++i) {
          if (d.heights()[i].height >= static_cast<int>(d.p())) continue;
          const Subgroup& N = L[i];
          int e = 0;
          for (Elem x : N.elements()) e = std::max(e, G.element_log_order(x));
          for (int k = 1; k <= e; ++k) {
            Subgroup a = commutator_with_group(G, power_subgroup(G, N, k));
            Subgroup b = power_subgroup(G, L.commutator(i), k);
            Subgroup c = commutator_subgroup(G, N, power_subgroup(G, W, k));
            if (!(a == b) || !b.is_subgroup_of(c))
              return fail("normal subgroup #" + std::to_string(i) + ", k = " + std::to_string(k));
          }
          ++tested;
        }
        return pass(std::to_string(tested) + " normal subgroups of small height");
      });

  add("small-pwc", "small-height-filtration", "M_1 = N, M_{i+1} = M_i^p N_{p-i-1} is a potent filtration of N",
      always, [](GroupData& d, const VerifyOptions&) {
        const auto& L = d.lattice();
        PfSearch search(L);
        int tested = 0;
        for (std::size_t i = 0; i < L.size(); ++i) {
          const auto& h = d.heights()[i];
          if (h.height > static_cast<int>(d.p()) - 1) continue;
          PotentFiltration f = small_height_filtration(d.G(), L[i], h.series);
          if (!search.filtration_of(L[i])) return fail("reachability finds no filtration for #" + std::to_string(i));
          if (f.terms.front() != L[i]) return fail("filtration does not start at N");
          ++tested;
        }
        return pass(std::to_string(tested) + " normal subgroups of height <= p-1");
      });

  add("small-pwc", "pf-implies-power-surjective", "G a PF-group implies G^(p^i) = {x^(p^i)} for all i",
      [](GroupData& d) { return d.pf().has_value(); },
      [](GroupData& d, const VerifyOptions&) {
        for (int i = 1; i <= d.G().log_exponent(); ++i)
          if (!is_power_surjective(d.G(), i)) return fail("fails at i = " + std::to_string(i));
        return pass();
      });

  add("small-pwc", "pf-witness-valid", "a returned potent filtration is G-central with [N_i,_{p-1}G] <= N_{i+1}^p",
      [](GroupData& d) { return d.pf().has_value(); },
      [](GroupData& d, const VerifyOptions&) {
        auto defect = potent_filtration_defect(d.G(), d.pf()->terms);
        return defect.empty() ? pass() : fail(defect);
      });

  // --------------------------------------------------------------------- omega
  add("omega", "omega-exponent-bound", "k = pwc(G) <= l(p-1) implies Omega_i(G)^(p^(i+l)) = 1", always,
      [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        OmegaTable t = omega_exponent_check(G, d.pwc());
        // independent recount with naive orders
        std::vector<int> lo(G.order());
        for (Elem x = 0; x < G.order(); ++x) lo[x] = naive_log_order(G, x);
        std::string rows;
        for (const auto& row : t.rows) {
          std::vector<Elem> gens;
          for (Elem x = 0; x < G.order(); ++x)
            if (lo[x] <= row.i) gens.push_back(x);
          Subgroup O = closure(G, gens);
          if (O.log_order() != row.log_order) return fail("Omega_" + std::to_string(row.i) + " order disagrees");
          const std::uint64_t e = ipow(d.p(), static_cast<std::uint64_t>(row.i + t.ell));
          for (Elem x : O.elements())
            if (G.pow(x, e) != kIdentity) return fail("Omega_" + std::to_string(row.i) + " exponent exceeds bound");
          rows += (rows.empty() ? "" : ", ") + ("exp Omega_" + std::to_string(row.i) + " = " +
                                                pstr(d.p(), row.log_exponent) + " <= " + pstr(d.p(), row.log_bound));
        }
        return pass("k = " + std::to_string(t.powerful_class) + ", l = " + std::to_string(t.ell) + ": " + rows);
      });

  // ------------------------------------------------------------------- coclass
  auto maxclass = [](GroupData& d) { return is_maximal_class(d.G()); };
  // |G| >= p^(2p^r + r) for the coclass r
  auto large_coclass = [](GroupData& d) {
    const int n = d.G().log_order();
    const int r = n - d.cls();
    const std::uint64_t pr = ipow(d.p(), static_cast<std::uint64_t>(r));
    return r >= 1 && pr != UINT64_MAX && static_cast<std::uint64_t>(n) >= 2 * pr + static_cast<std::uint64_t>(r);
  };

  add("coclass", "maximal-class-eta-is-center", "G of maximal class implies eta(G) = Z(G)", maxclass,
      [](GroupData& d, const VerifyOptions&) {
        return d.eta(1) == center(d.G()) ? pass() : fail("eta(G) != Z(G)");
      });

  add("coclass", "maximal-class-eta-is-upper-central", "G of maximal class implies eta_i(G) = Z_i(G), pwc = class",
      maxclass, [](GroupData& d, const VerifyOptions&) {
        for (int i = 0; i <= d.cls(); ++i)
          if (!(d.eta(i) == d.z(i))) return fail("eta_" + std::to_string(i) + " != Z_" + std::to_string(i));
        if (d.pwc() != d.cls()) return fail("pwc != class");
        return pass("pwc = class = " + std::to_string(d.cls()));
      });

  add("coclass", "uniserial-power-shift",
      "coclass r, |G| >= p^(2p^r+r), m = p^r - p^(r-1): some s < r gives gamma_i^p = gamma_{i+d}, d = (p-1)p^s, "
      "and G acts uniserially on gamma_m",
      large_coclass,
      [](GroupData& d, const VerifyOptions&) {
        ShalevReport r = verify_shalev(d.G(), &d.lattice());
        if (!r.uniserial) return fail("action on gamma_m is not uniserial");
        return pass("m = " + std::to_string(r.m) + ", s = " + std::to_string(r.s) + ", d = " + std::to_string(r.d));
      });

  add("coclass", "pwc-coclass-order-bound", "|G| >= p^(2p^r+r) implies |G| <= p^(k+r+m-1), k = pwc(G)", always,
      [](GroupData& d, const VerifyOptions&) {
        return pwccoclass_bound_check(d.G(), d.pwc()) ? pass() : fail("order exceeds p^(k+r+m-1)");
      });

  add("coclass", "large-coclass-not-pf", "|G| >= p^(2p^r+r) for coclass r implies G is not a PF-group",
      large_coclass, [](GroupData& d, const VerifyOptions&) { return d.pf() ? fail("a potent filtration exists") : pass(); });

  // -------------------------------------------------------- catalog-regression
  add("catalog-regression", "power-of-alpha-x1", "(alpha x_1)^p = alpha^p x_p, x_p in G^p, x_p not a p-th power",
      [](GroupData& d) { return is_ref(d, "mann_nonpf"); },
      [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const auto gens = G.generators();  // alpha, x_1, ..., x_p
        const Elem alpha = gens[0], x1 = gens[1], xp = gens[d.p()];
        if (G.pth_power(G.mul(alpha, x1)) != G.mul(G.pth_power(alpha), xp)) return fail("identity fails");
        const Subgroup W = whole_group(G);
        if (!power_subgroup(G, W, 1).contains(xp)) return fail("x_p not in G^p");
        if (power_image(G, W, 1).test(xp)) return fail("x_p is a p-th power");
        return pass();
      });

  add("catalog-regression", "potent-nopwc-structure",
      "G_n potent, Z(G_n) = <x_1^(p^n)>, eta_i = Z_i, pwc = n(p-2)+1",
      [](GroupData& d) { return is_ref(d, "potent_nopwc"); },
      [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const int n = detail::param(d.ref()->params, "n", 1);
        const int p = static_cast<int>(d.p());
        if (!is_potent(G)) return fail("not potent");
        const Elem x1 = G.generators()[1];
        if (!(center(G) == closure(G, {G.pow(x1, ipow(d.p(), static_cast<std::uint64_t>(n)))})))
          return fail("Z(G) != <x_1^(p^n)>");
        for (int i = 0; i <= d.cls(); ++i)
          if (!(d.eta(i) == d.z(i))) return fail("eta_" + std::to_string(i) + " != Z_" + std::to_string(i));
        if (d.pwc() != n * (p - 2) + 1) return fail("pwc = " + std::to_string(d.pwc()));
        return pass("pwc = " + std::to_string(d.pwc()));
      });

  add("catalog-regression", "kirillov-eta-formula",
      "eta_i = <alpha^(p^(p-i-1)), x_j^(p^k_ij) (j <= p-2), x_{p-1}, x_p>, k_ij = max(p-i-j, 0), in the finite quotient",
      [](GroupData& d) { return is_ref(d, "kirillov_quotient"); },
      [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const auto gens = G.generators();
        const int p = static_cast<int>(d.p());
        std::string out = "pwc = " + std::to_string(d.pwc()) + ";";
        bool all = true;
        for (int i = 1; i <= p - 1; ++i) {
          Subgroup predicted = whole_group(G);
          if (i <= p - 2) {
            std::vector<Elem> w{G.pow(gens[0], ipow(d.p(), static_cast<std::uint64_t>(p - i - 1)))};
            for (int j = 1; j <= p - 2; ++j)
              w.push_back(G.pow(gens[static_cast<std::size_t>(j)], ipow(d.p(), static_cast<std::uint64_t>(std::max(p - i - j, 0)))));
            w.push_back(gens[static_cast<std::size_t>(p - 1)]);
            w.push_back(gens[static_cast<std::size_t>(p)]);
            predicted = closure(G, w);
          }
          const bool match = predicted == d.eta(i);
          all = all && match;
          out += " eta_" + std::to_string(i) + ": computed " + pstr(d.p(), d.eta(i).log_order()) + ", formula " +
                 pstr(d.p(), predicted.log_order()) + (match ? " (match)" : " (differs)") + ";";
        }
        return note(out + (all ? " formula reproduced" : " formula not reproduced in this quotient"));
      });

  add("catalog-regression", "unitriangular-eta-pattern",
      "eta(UT_n) against {a : a_{i,i+l} divisible by p^(n-l-1)}; eta powerfully embedded and containing Z",
      [](GroupData& d) { return is_ref(d, "unitriangular"); },
      [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const int n = detail::param(d.ref()->params, "n", 3);
        const int m = detail::param(d.ref()->params, "m", 1);
        const Subgroup& E = d.eta(1);
        if (!is_powerfully_embedded(G, E) || !center(G).is_subgroup_of(E))
          return fail("eta(G) not powerfully embedded or missing Z(G)");
        UnitriangularCoords uc{n, ipow(d.p(), static_cast<std::uint64_t>(m))};
        ElemSet predicted(G.order());
        for (Elem x = 0; x < G.order(); ++x) {
          bool in = true;
          for (int i = 0; i < n && in; ++i)
            for (int l = 1; i + l < n && in; ++l) {
              const int need = std::min(std::max(n - l - 1, 0), m);
              if (uc.entry(x, i, i + l) % ipow(d.p(), static_cast<std::uint64_t>(need)) != 0) in = false;
            }
          if (in) predicted.set(x);
        }
        const bool match = predicted == E.set();
        return note("|eta| = " + pstr(d.p(), E.log_order()) + ", pattern predicts " +
                    pstr(d.p(), log_p(predicted.count(), d.p())) + (match ? " (match)" : " (differs)"));
      });

  add("catalog-regression", "normal-enumeration-oracle",
      "central-extension BFS = all subgroups filtered by normality", [](GroupData& d) { return d.G().order() <= 81; },
      [](GroupData& d, const VerifyOptions&) {
        auto brute = brute_force_normal_subgroups(d.G());
        const auto& L = d.lattice();
        if (brute.size() != L.size())
          return fail(std::to_string(L.size()) + " enumerated vs " + std::to_string(brute.size()) + " brute force");
        for (const auto& s : brute)
          if (!L.find(closure_of_set(d.G(), s))) return fail("a normal subgroup is missing");
        return pass(std::to_string(L.size()) + " normal subgroups");
      });

  add("catalog-regression", "power-subgroup-closure", "power_subgroup(N, i) = closure(power_image(N, i))", always,
      [](GroupData& d, const VerifyOptions&) {
        const auto& L = d.lattice();
        for (std::size_t k = 0; k < L.size(); ++k)
          for (int i = 1; i <= d.G().log_exponent(); ++i)
            if (!(closure_of_set(d.G(), power_image(d.G(), L[k], i)) == power_subgroup(d.G(), L[k], i)))
              return fail("fails for normal subgroup #" + std::to_string(k) + ", i = " + std::to_string(i));
        return pass();
      });

  add("catalog-regression", "quotient-composition", "(G/N)/(M/N) = G/M with surjective homomorphic projections",
      always, [](GroupData& d, const VerifyOptions&) {
        const FiniteGroup& G = d.G();
        const Subgroup N = center(G);
        const Subgroup M = join(N, frattini(G));
        auto [Q1, q1] = quotient(G, N);
        auto [Q2, q2] = quotient(Q1, image(q1, M));
        auto [Q3, q3] = quotient(G, M);
        GroupHom c = q1.then(q2);
        if (Q2.order() != Q3.order()) return fail("orders differ");
        if (!(preimage(c, trivial_subgroup(Q2)) == M)) return fail("composite kernel differs from M");
        for (const GroupHom* h : {&q1, &q2, &q3, &c})
          if (!h->is_surjective() || !h->spot_check(1000, 7)) return fail("projection is not a surjective homomorphism");
        return pass();
      });

  return P;
}

}  // namespace detail

inline const std::vector<Property>& properties() {
  static const std::vector<Property> P = detail::build_properties();
  return P;
}

// ---------------------------------------------------------- expected records

inline std::string default_data_dir() {
  if (const char* env = std::getenv("PGROUP_DATA_DIR")) return env;
#ifdef PGROUP_DATA_DIR
  return PGROUP_DATA_DIR;
#else
  return "data";
#endif
}

struct ExpectedRecord {
  CatalogRef ref;
  nlohmann::json expect;  // field -> {"value": ..., "source": ...}
};

inline std::vector<ExpectedRecord> load_expected(const std::string& dir) {
  const std::string path = dir + "/catalog.json";
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  std::vector<ExpectedRecord> out;
  for (const auto& rec : j.at("instances")) {
    ExpectedRecord r;
    r.ref.name = rec.at("name").get<std::string>();
    r.ref.params["prime"] = {rec.at("prime").get<int>()};
    for (const auto& [k, v] : rec.at("params").items())
      r.ref.params[k] = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
    r.expect = rec.at("expect");
    out.push_back(std::move(r));
  }
  return out;
}

// The invariants an expected record may name.
inline nlohmann::json observed_invariants(GroupData& d, const nlohmann::json& wanted) {
  nlohmann::json o;
  const FiniteGroup& G = d.G();
  const std::uint32_t p = d.p();
  auto pp = [p](int e) { return nlohmann::json::array({p, e}); };
  for (const auto& [k, v] : wanted.items()) {
    if (k == "order") o[k] = pp(G.log_order());
    else if (k == "exponent") o[k] = pp(G.log_exponent());
    else if (k == "class") o[k] = d.cls();
    else if (k == "coclass") o[k] = G.log_order() - d.cls();
    else if (k == "maximal_class") o[k] = is_maximal_class(G);
    else if (k == "pwc") o[k] = d.pwc();
    else if (k == "powerful") o[k] = d.pwc() <= 1;
    else if (k == "potent") o[k] = is_potent(G);
    else if (k == "pf") o[k] = d.pf().has_value();
    else if (k == "center") o[k] = pp(center(G).log_order());
    else if (k == "eta") o[k] = pp(d.eta(1).log_order());
    else if (k == "eta_series") o[k] = d.eta_report().series.log_orders();
    else if (k == "power_surjective") o[k] = is_power_surjective(G, 1);
    else if (k == "normal_subgroups") o[k] = d.lattice().size();
    else throw Error(ErrorKind::ParseError, "expected record names unknown invariant \"" + k + "\"");
  }
  return o;
}

inline Check check_expected(GroupData& d, const std::vector<ExpectedRecord>& records) {
  const std::string label = d.ref()->label();
  for (const auto& r : records) {
    if (r.ref.label() != label) continue;
    auto obs = observed_invariants(d, r.expect);
    std::string bad;
    for (const auto& [k, v] : r.expect.items())
      if (obs[k] != v.at("value"))
        bad += (bad.empty() ? "" : "; ") + k + ": expected " + v.at("value").dump() + " [" +
               v.at("source").get<std::string>() + "], got " + obs[k].dump();
    if (!bad.empty()) return fail(bad);
    return pass(std::to_string(r.expect.size()) + " fields");
  }
  return fail("no expected record for " + label);
}

// ------------------------------------------------------------------- driver

inline std::vector<PropertyResult> run_suites(const std::vector<std::string>& suites,
                                              const std::vector<CatalogInstance>& instances,
                                              const VerifyOptions& opt) {
  for (const auto& s : suites)
    if (std::find(verify_suites().begin(), verify_suites().end(), s) == verify_suites().end())
      throw Error(ErrorKind::UnknownName, "unknown suite \"" + s + "\"");
  auto wants = [&](const std::string& s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };

  std::vector<ExpectedRecord> records;
  if (wants("catalog-regression")) records = load_expected(opt.data_dir.empty() ? default_data_dir() : opt.data_dir);

  std::vector<PropertyResult> out;
  for (const auto& inst : instances) {
    GroupData d(inst.ref.label(), inst.ref.build(), opt.budget, inst.ref);
    auto record = [&](const std::string& suite, const std::string& name, const std::string& anchor,
                      const std::function<Check()>& f) {
      PropertyResult r{suite, name, anchor, d.label(), Outcome::Pass, {}};
      try {
        Check c = f();
        r.outcome = c.outcome;
        r.detail = std::move(c.detail);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded) throw;
        r.outcome = Outcome::Fail;
        r.detail = std::string(to_string(e.kind())) + ": " + e.what();
      } catch (const std::exception& e) {
        r.outcome = Outcome::Fail;
        r.detail = e.what();
      }
      out.push_back(std::move(r));
    };
    for (const auto& suite : verify_suites()) {
      if (!wants(suite)) continue;
      if (suite == "catalog-regression")
        record(suite, "expected-invariants", "recorded invariants with provenance",
               [&] { return check_expected(d, records); });
      for (const auto& prop : properties()) {
        if (prop.suite != suite) continue;
        bool applies = false;
        record(suite, prop.name, prop.anchor, [&] {
          applies = prop.applies(d);
          return applies ? prop.run(d, opt) : Check{};
        });
        if (!applies && out.back().outcome == Outcome::Pass) out.pop_back();
      }
    }
  }
  return out;
}

inline std::vector<PropertyResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
  std::vector<std::string> suites = suite == "all" ? verify_suites() : std::vector<std::string>{suite};
  return run_suites(suites, select_instances(opt), opt);
}

inline bool all_passed(const std::vector<PropertyResult>& rs) {
  return std::none_of(rs.begin(), rs.end(), [](const PropertyResult& r) { return r.outcome == Outcome::Fail; });
}

inline nlohmann::json results_json(const std::vector<PropertyResult>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs)
    a.push_back({{"suite", r.suite},
                 {"property", r.property},
                 {"anchor", r.anchor},
                 {"group", r.group},
                 {"outcome", to_string(r.outcome)},
                 {"detail", r.detail}});
  const auto failed = std::count_if(rs.begin(), rs.end(), [](const PropertyResult& r) { return r.outcome == Outcome::Fail; });
  return {{"results", a}, {"total", rs.size()}, {"failed", failed}, {"passed", failed == 0}};
}

inline std::string results_text(const std::vector<PropertyResult>& rs) {
  std::ostringstream o;
  std::size_t w = 8;
  for (const auto& r : rs) w = std::max(w, r.property.size());
  std::size_t g = 5;
  for (const auto& r : rs) g = std::max(g, r.group.size());
  for (const auto& r : rs) {
    o << (r.outcome == Outcome::Fail ? "FAIL" : r.outcome == Outcome::Info ? "info" : "pass") << "  " << r.property
      << std::string(w - r.property.size() + 2, ' ') << r.group << std::string(g - r.group.size() + 2, ' ')
      << r.detail << "\n";
  }
  const auto failed = std::count_if(rs.begin(), rs.end(), [](const PropertyResult& r) { return r.outcome == Outcome::Fail; });
  o << rs.size() << " checks, " << failed << " failed\n";
  return o.str();
}

}  // namespace pgroup
