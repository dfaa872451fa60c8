// Subgroup algebra against brute-force definitions: closures, commutators,
// power subgroups, Omega, Frattini, central series and the normal lattice.

#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

FiniteGroup cat(const std::string& name, int p, CatalogParams extra = {}) { return make_ref(name, p, extra).build(); }

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> out;
  for (const auto& c : catalog_instances())
    if (instance_order(c) <= 81) out.push_back(c.ref.build());
  return out;
}

// Every subgroup, by adjoining one element at a time from the trivial group.
std::vector<ElemSet> all_subgroups(const FiniteGroup& G) {
  std::vector<Subgroup> todo{trivial_subgroup(G)};
  std::unordered_set<ElemSet, ElemSetHash> seen{todo.front().set()};
  std::vector<ElemSet> out;
  for (std::size_t h = 0; h < todo.size(); ++h) {
    out.push_back(todo[h].set());
    for (Elem x = 0; x < G.order(); ++x) {
      if (todo[h].contains(x)) continue;
      Subgroup H = extend(todo[h], std::vector<Elem>{x});
      if (seen.insert(H.set()).second) todo.push_back(H);
    }
  }
  return out;
}

bool normal_by_definition(const FiniteGroup& G, const ElemSet& s) {
  bool ok = true;
  s.for_each([&](Elem h) {
    for (Elem g = 0; g < G.order() && ok; ++g) ok = s.test(G.conj(h, g));
  });
  return ok;
}

Subgroup closure_of_predicate(const FiniteGroup& G, auto pred) {
  ElemSet s(G.order());
  for (Elem x = 0; x < G.order(); ++x)
    if (pred(x)) s.set(x);
  return closure_of_set(G, s);
}

}  // namespace

TEST(Closure, CyclicAndGeneratedSubgroups) {
  FiniteGroup G = cat("abelian", 3, {{"type", {2, 1}}});
  Subgroup C = closure(G, {1});
  EXPECT_EQ(C.order(), 9u);
  EXPECT_EQ(C.generators().size(), 1u);
  EXPECT_TRUE(whole_group(G).is_whole());
  EXPECT_TRUE(trivial_subgroup(G).is_trivial());
  EXPECT_EQ(join(C, closure(G, {9})).order(), 27u);
  EXPECT_EQ(intersection(C, closure(G, {3})).order(), 3u) << "<x> meets <x^3 y^0> in <x^3>";
}

TEST(Closure, NormalClosureOfANonNormalElement) {
  FiniteGroup G = cat("heisenberg", 3);
  Subgroup H = closure(G, {1});
  EXPECT_FALSE(is_normal(G, H));
  Subgroup N = normal_closure(G, {1});
  EXPECT_EQ(N.order(), 9u) << "<g1, [g1, g2]>";
  EXPECT_TRUE(normal_by_definition(G, N.set()));
  EXPECT_TRUE(H.is_subgroup_of(N));
}

TEST(Commutators, DerivedSubgroupIsGeneratedByAllCommutators) {
  for (const FiniteGroup& G : small_groups()) {
    Subgroup W = whole_group(G);
    Subgroup D = closure_of_predicate(G, [&](Elem x) {
      for (Elem y = 0; y < G.order(); ++y)
        for (Elem z = 0; z < G.order(); ++z)
          if (G.commutator(y, z) == x) return true;
      return false;
    });
    EXPECT_EQ(commutator_with_group(G, W), D) << G.label();
    EXPECT_EQ(commutator_subgroup(G, W, W), D) << G.label();
  }
}

TEST(Commutators, IteratedCommutatorFollowsLowerCentralSeries) {
  FiniteGroup G = cat("mainline_coclass1", 3, {{"k", {4}}});
  auto lcs = lower_central_series(G);
  Subgroup W = whole_group(G);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(iterated_commutator(G, W, k), gamma(lcs, k + 1)) << k;
}

TEST(Powers, PowerSubgroupIsClosureOfPowerImage) {
  for (const FiniteGroup& G : small_groups()) {
    Subgroup W = whole_group(G);
    for (int i = 1; i <= 2; ++i) {
      Subgroup P = closure_of_predicate(G, [&](Elem x) {
        for (Elem y = 0; y < G.order(); ++y)
          if (G.pow(y, ipow(G.prime(), static_cast<std::uint64_t>(i))) == x) return true;
        return false;
      });
      EXPECT_EQ(power_subgroup(G, W, i), P) << G.label() << " i=" << i;
    }
  }
}

TEST(Powers, MannGroupPowerImageIsNotASubgroup) {
  FiniteGroup G = cat("mann_nonpf", 3);
  ElemSet img = power_image(G, whole_group(G), 1);
  Subgroup P = power_subgroup(G, whole_group(G), 1);
  EXPECT_LT(img.count(), P.order());
}

TEST(Omega, GeneratedByElementsOfSmallOrder) {
  for (const FiniteGroup& G : small_groups())
    for (int i = 1; i <= G.log_exponent(); ++i) {
      Subgroup O = closure_of_predicate(G, [&](Elem x) {
        return G.pow(x, ipow(G.prime(), static_cast<std::uint64_t>(i))) == kIdentity;
      });
      EXPECT_EQ(omega_subgroup(G, i), O) << G.label() << " i=" << i;
    }
}

TEST(Frattini, EqualsIntersectionOfMaximalSubgroups) {
  for (const FiniteGroup& G : small_groups()) {
    if (G.order() == 1) continue;
    ElemSet meet(G.order());
    for (Elem x = 0; x < G.order(); ++x) meet.set(x);
    for (const ElemSet& s : all_subgroups(G))
      if (s.count() * G.prime() == G.order()) meet &= s;
    EXPECT_EQ(frattini(G).set(), meet) << G.label();
  }
}

TEST(CentralSeries, UpperAndLowerHaveTheSameLength) {
  for (const FiniteGroup& G : small_groups()) {
    auto u = upper_central_series(G);
    auto l = lower_central_series(G);
    EXPECT_EQ(u.size(), l.size()) << G.label();
    EXPECT_TRUE(u.is_chain());
    EXPECT_TRUE(l.is_chain());
    // gamma_{c+1-i} <= Z_i
    const std::size_t c = u.size() - 1;
    for (std::size_t i = 0; i <= c; ++i) EXPECT_TRUE(l[c - i].is_subgroup_of(u[i])) << G.label();
  }
}

TEST(CentralSeries, CenterByDefinition) {
  for (const FiniteGroup& G : small_groups()) {
    Subgroup Z = closure_of_predicate(G, [&](Elem x) {
      for (Elem y = 0; y < G.order(); ++y)
        if (G.mul(x, y) != G.mul(y, x)) return false;
      return true;
    });
    EXPECT_EQ(center(G), Z) << G.label();
  }
}

TEST(NormalSubgroups, KnownCounts) {
  EXPECT_EQ(enumerate_normal_subgroups(cat("abelian", 3, {{"type", {1, 1}}})).size(), 6u);
  EXPECT_EQ(enumerate_normal_subgroups(cat("abelian", 3, {{"type", {3}}})).size(), 4u);
  EXPECT_EQ(enumerate_normal_subgroups(cat("abelian", 3, {{"type", {1, 1, 1}}})).size(), 28u);
  // extraspecial of order p^3: 1, Z, the p+1 maximal subgroups, G
  EXPECT_EQ(enumerate_normal_subgroups(cat("heisenberg", 5)).size(), 9u);
}

TEST(NormalSubgroups, MatchBruteForceUpToOrder81) {
  for (const FiniteGroup& G : small_groups()) {
    std::set<std::vector<Elem>> brute, fast;
    for (const ElemSet& s : all_subgroups(G))
      if (normal_by_definition(G, s)) brute.insert(s.elements());
    for (const Subgroup& N : enumerate_normal_subgroups(G)) fast.insert(N.sorted_elements());
    EXPECT_EQ(fast, brute) << G.label();
  }
}

TEST(NormalSubgroups, BudgetIsEnforced) {
  FiniteGroup G = cat("abelian", 3, {{"type", {1, 1, 1, 1}}});
  try {
    enumerate_normal_subgroups(G, 50);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  EXPECT_EQ(enumerate_normal_subgroups(G).size(), 212u);
}

TEST(NormalLattice, CachedCommutatorsAndPowers) {
  FiniteGroup G = cat("wreath", 3);
  NormalLattice L(G);
  EXPECT_EQ(L[L.trivial_index()].order(), 1u);
  EXPECT_TRUE(L[L.whole_index()].is_whole());
  for (std::size_t i = 0; i < L.size(); ++i) {
    EXPECT_EQ(L.commutator(i), commutator_with_group(G, L[i]));
    EXPECT_EQ(L.power(i), power_subgroup(G, L[i], 1));
    EXPECT_EQ(L.index_of(L[i]), i);
    // embedded_mod against an explicit product set
    for (std::size_t k = 0; k < L.size(); ++k) {
      if (!L[k].is_subgroup_of(L[i])) continue;
      bool want = L.commutator(i).is_subgroup_of(join(L.power(i), L[k]));
      EXPECT_EQ(L.embedded_mod(i, k), want);
    }
  }
  EXPECT_FALSE(L.find(closure(G, {27})).has_value()) << "<alpha> is not normal";
}
