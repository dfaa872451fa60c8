// Acceptance gate: ten criteria, each printed as one PASS/FAIL line with its
// elapsed time. A criterion fails if any check fails or its time limit is
// exceeded. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

struct Tally {
  bool ok = true;
  std::ostringstream log;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    failed: " << what << "\n";
    }
  }
  void info(const std::string& what) { log << "    " << what << "\n"; }
};

FiniteGroup cat(const std::string& name, int p, CatalogParams extra = {}) { return make_ref(name, p, extra).build(); }

std::string pw(std::uint32_t p, int e) { return std::to_string(p) + "^" + std::to_string(e); }

void suite_checks(Tally& out, const std::vector<std::string>& suites, const std::vector<CatalogInstance>& inst,
                  const std::vector<std::string>& only = {}) {
  VerifyOptions opt;
  auto rs = run_suites(suites, inst, opt);
  std::size_t counted = 0, info = 0;
  for (const auto& r : rs) {
    if (!only.empty() && std::find(only.begin(), only.end(), r.property) == only.end()) continue;
    ++counted;
    if (r.outcome == pgroup::Outcome::Info) {
      ++info;
      out.info("info " + r.property + " on " + r.group + ": " + r.detail);
    }
    out.require(r.outcome != pgroup::Outcome::Fail, r.property + " on " + r.group + ": " + r.detail);
  }
  for (const auto& name : only) {
    bool seen = std::any_of(rs.begin(), rs.end(), [&](const PropertyResult& r) { return r.property == name; });
    out.require(seen, "property " + name + " never applied");
  }
  out.require(counted > 0, "no checks ran");
  out.info(std::to_string(counted) + " checks over " + std::to_string(inst.size()) + " groups");
}

std::vector<CatalogInstance> instances_where(const std::function<bool(const CatalogInstance&)>& keep) {
  std::vector<CatalogInstance> v;
  for (const auto& c : catalog_instances())
    if (keep(c)) v.push_back(c);
  return v;
}

void c1(Tally& o) {
  for (int idx : {3, 4}) {
    FiniteGroup G = cat("order27", 3, {{"index", {idx}}});
    Subgroup E = eta(G);
    o.require(!G.is_abelian(), G.label() + " is nonabelian");
    if (G.exponent() == 3) {
      o.require(E == center(G) && E.order() == 3, "exponent 3: eta = Z of order 3");
    } else {
      o.require(E.is_whole(), "exponent 9: eta = G");
    }
    o.info(G.label() + ": exp " + std::to_string(G.exponent()) + ", |eta| = " + std::to_string(E.order()));
  }
}

void c2(Tally& o) {
  FiniteGroup G = cat("mann_nonpf", 3);
  o.require(G.order() == 243, "order 3^5");
  const Elem alpha = 27, x1 = 1, x3 = 9;
  const int pwc = powerful_class(G);
  o.require(pwc == 3, "pwc = 3, got " + std::to_string(pwc));
  o.require(G.pow(G.mul(alpha, x1), 3) == G.mul(G.pow(alpha, 3), x3), "(alpha x_1)^3 = alpha^3 x_3");
  o.require(power_subgroup(G, whole_group(G), 1).contains(x3), "x_3 in G^3");
  o.require(!power_image(G, whole_group(G), 1).test(x3), "x_3 is not a cube");
  o.require(!is_pf_group(G).has_value(), "no potent filtration");
}

void c3(Tally& o) {
  FiniteGroup G = cat("potent_nopwc", 5, {{"n", {1}}});
  o.require(G.order() == 3125, "order 5^5");
  o.require(is_potent(G), "potent");
  Subgroup Z = center(G);
  o.require(Z.order() == 5 && Z == closure(G, {G.pow(1, 5)}), "Z(G) = <x_1^5> of order 5");
  EtaReport r = upper_eta_series(G);
  auto ucs = upper_central_series(G);
  o.require(r.powerful_class == 4, "pwc = 4, got " + std::to_string(r.powerful_class));
  o.require(r.series.size() == ucs.size(), "eta and upper central series have equal length");
  for (std::size_t i = 0; i < std::min(r.series.size(), ucs.size()); ++i)
    o.require(r.series[i] == ucs[i], "eta_" + std::to_string(i) + " = Z_" + std::to_string(i));
}

void c4(Tally& o) {
  suite_checks(o, {"eta-lemmas"}, instances_where([](const CatalogInstance& c) {
                 return c.prime == 5 || (c.prime == 3 && c.log_order <= 6);
               }),
               {"eta-is-largest-powerfully-embedded", "eta-mod-power-is-center", "eta-step-mod-power-is-center",
                "upper-central-below-eta", "pwc-at-most-class", "eta-of-quotient-shifts", "eta-term-height",
                "eta-term-pwc", "eta-term-commutator", "eta-mod-eta-power", "powerful-top-is-elementary",
                "frattini-below-eta-k-1", "random-eta-series-below-upper"});
}

void c5(Tally& o) {
  suite_checks(o, {"omega"}, catalog_instances(), {"omega-exponent-bound"});
}

void c6(Tally& o) {
  suite_checks(o, {"small-pwc"}, catalog_instances(),
               {"small-pwc-is-pf", "small-pwc-power-structure", "two-generator-exponent", "small-height-filtration",
                "pf-witness-valid"});
}

void c7(Tally& o) {
  std::vector<FiniteGroup> gs;
  for (int k = 2; k <= 6; ++k) gs.push_back(cat("mainline_coclass1", 3, {{"k", {k}}}));
  gs.push_back(cat("wreath", 3));
  for (const FiniteGroup& G : gs) {
    EtaReport r = upper_eta_series(G);
    auto ucs = upper_central_series(G);
    const int c = static_cast<int>(ucs.size()) - 1;
    o.require(r.powerful_class == c, G.label() + ": pwc = class");
    bool same = r.series.size() == ucs.size();
    for (std::size_t i = 0; same && i < ucs.size(); ++i) same = r.series[i] == ucs[i];
    o.require(same, G.label() + ": eta_i = Z_i for all i");
    o.info(G.label() + ": class " + std::to_string(c) + ", pwc " + std::to_string(r.powerful_class));
  }
}

void c8(Tally& o) {
  FiniteGroup G = cat("mainline_coclass1", 3, {{"k", {6}}});
  NormalLattice L(G);
  ShalevReport s = verify_shalev(G, &L);
  o.require(G.order() == 2187, "order 3^7");
  o.require(s.applicable, "order above the threshold");
  o.require(s.s == 0 && s.d == 2, "s = 0, d = 2");
  o.require(s.uniserial, "uniserial action on gamma_m");
  o.require(!is_pf_embedded(L, L[L.whole_index()]).has_value(), "not PF");
  o.require(pwccoclass_bound_check(G), "|G| <= p^(k+r+m-1)");
  o.info("m = " + std::to_string(s.m) + ", " + std::to_string(L.size()) + " normal subgroups");
}

void c9(Tally& o) {
  std::size_t heights = 0, lattices = 0, powers = 0;
  for (const auto& c : catalog_instances()) {
    FiniteGroup G = c.ref.build();
    const bool small = instance_order(c) <= 729;
    if (small) {
      NormalLattice L(G);
      for (std::size_t i = 0; i < L.size(); ++i) {
        try {
          HeightResult h = powerful_height(L, L[i], true);
          o.require(h.oracle_height && *h.oracle_height == h.height, "greedy = BFS on " + G.label());
        } catch (const Error& e) {
          o.require(false, e.what());
        }
        ++heights;
        for (int k = 1; k <= 2; ++k) {
          o.require(power_subgroup(G, L[i], k) == closure_of_set(G, power_image(G, L[i], k)),
                    "power closure on " + G.label());
          ++powers;
        }
      }
    } else {
      Subgroup W = whole_group(G);
      o.require(power_subgroup(G, W, 1) == closure_of_set(G, power_image(G, W, 1)), "power closure on " + G.label());
      ++powers;
    }
    if (instance_order(c) <= 81) {
      auto fast = enumerate_normal_subgroups(G);
      auto brute = detail::brute_force_normal_subgroups(G);
      std::vector<std::vector<Elem>> a, b;
      for (const auto& N : fast) a.push_back(N.sorted_elements());
      for (const auto& s : brute) b.push_back(s.elements());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      o.require(a == b, "normal enumeration matches brute force on " + G.label());
      ++lattices;
    }
  }
  o.info(std::to_string(heights) + " height comparisons, " + std::to_string(lattices) + " lattices, " +
         std::to_string(powers) + " power closures");
}

void c10(Tally& o) {
  FiniteGroup G = cat("unitriangular", 3, {{"n", {3}}, {"m", {2}}});
  Subgroup E = eta(G);
  o.require(is_powerfully_embedded(G, E), "eta powerfully embedded");
  o.require(center(G).is_subgroup_of(E), "Z(G) <= eta");
  o.info("|eta(UT_3(Z/9))| = " + pw(3, E.log_order()));
  // pattern: superdiagonal entries divisible by 3, corner free
  UnitriangularCoords uc{3, 9};
  std::uint64_t pattern = 0;
  bool inside = true;
  for (Elem x = 0; x < G.order(); ++x) {
    bool in = uc.entry(x, 0, 1) % 3 == 0 && uc.entry(x, 1, 2) % 3 == 0;
    pattern += in;
    if (in != E.contains(x)) inside = false;
  }
  o.info("pattern subgroup order " + std::to_string(pattern) + (inside ? ", equals eta" : ", differs from eta"));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    void (*run)(Tally&);
  };
  const std::vector<Criterion> criteria{
      {1, "order-27 eta ground truth", 1, c1},
      {2, "powerful class p without a potent filtration (p = 3)", 30, c2},
      {3, "potent group of powerful class 4 (p = 5, n = 1)", 300, c3},
      {4, "eta-series lemmas on orders <= 3^6 and p = 5", 600, c4},
      {5, "Omega_i exponent bound on the whole catalog", 0, c5},
      {6, "small powerful class: PF, power structure, filtrations", 0, c6},
      {7, "maximal class: eta_i = Z_i and pwc = class", 600, c7},
      {8, "coclass checks at order 3^7", 1200, c8},
      {9, "oracle equivalences", 0, c9},
      {10, "UT_3(Z/9) eta exploration", 120, c10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Tally o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.require(false, "time limit " + std::to_string(c.limit_s) + " s exceeded");
    all = all && o.ok;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << secs << " s";
    if (c.limit_s > 0) line << ", limit " << c.limit_s << " s";
    line << ")";
    std::cout << line.str() << "\n" << o.log.str() << std::flush;
  }
  return all ? 0 : 1;
}
