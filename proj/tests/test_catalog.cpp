// Catalog construction: parameters, labels, orders and the documented
// structure of each family.

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

FiniteGroup cat(const std::string& name, int p, CatalogParams extra = {}) { return make_ref(name, p, extra).build(); }

ErrorKind kind_of(const std::string& name, const CatalogParams& ps) {
  try {
    catalog_build(name, ps);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << name << " built without error";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Catalog, ListIsSortedAndComplete) {
  auto names = catalog_list();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(names.size(), 10u);
  for (const auto& c : catalog_instances()) EXPECT_NE(std::find(names.begin(), names.end(), c.ref.name), names.end());
}

TEST(Catalog, InstanceOrdersMatchBuiltGroups) {
  for (const auto& c : catalog_instances()) {
    if (instance_order(c) > 3125) continue;
    FiniteGroup G = c.ref.build();
    EXPECT_EQ(G.prime(), c.prime) << c.ref.label();
    EXPECT_EQ(G.log_order(), c.log_order) << c.ref.label();
    EXPECT_EQ(G.label(), c.ref.label());
  }
}

TEST(Catalog, UnknownNamesAndParameters) {
  EXPECT_EQ(kind_of("nosuch", {}), ErrorKind::UnknownName);
  EXPECT_EQ(kind_of("heisenberg", {{"k", {2}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("potent_nopwc", {{"prime", {3}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("order27", {{"index", {5}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("order27", {{"prime", {5}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("abelian", {{"type", {0}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("mainline_coclass1", {{"k", {0}}}), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(kind_of("mainline_coclass1", {{"k", {20}}}), ErrorKind::SizeLimitExceeded);
}

TEST(Catalog, DefaultPrimes) {
  EXPECT_EQ(catalog_default_prime("potent_nopwc"), 5u);
  EXPECT_EQ(catalog_default_prime("heisenberg"), 3u);
  EXPECT_EQ(catalog_build("potent_nopwc", {}).prime(), 5u);
}

TEST(Catalog, MannGroupOrderAndClass) {
  FiniteGroup G = cat("mann_nonpf", 3);
  EXPECT_EQ(G.order(), 243u);
  EXPECT_EQ(nilpotency_class(G), 3);
}

TEST(Catalog, PotentGroupStructure) {
  FiniteGroup G = cat("potent_nopwc", 5, {{"n", {1}}});
  EXPECT_EQ(G.order(), 3125u);
  // x_1 generates the C_25 factor of the base, at index 1.
  EXPECT_EQ(G.element_order(1), 25u);
  Subgroup Z = center(G);
  EXPECT_EQ(Z.order(), 5u);
  EXPECT_EQ(Z, closure(G, {G.pow(1, 5)}));
  EXPECT_TRUE(rank(G) == 2) << "two-generator";
}

TEST(Catalog, MainlineGroupsHaveMaximalClass) {
  for (int k = 2; k <= 6; ++k) {
    FiniteGroup G = cat("mainline_coclass1", 3, {{"k", {k}}});
    EXPECT_EQ(G.log_order(), k + 1);
    EXPECT_EQ(nilpotency_class(G), k);
    EXPECT_EQ(coclass(G), 1);
    EXPECT_EQ(is_maximal_class(G), k >= 3);
  }
  FiniteGroup G5 = cat("mainline_coclass1", 5, {{"k", {3}}});
  EXPECT_EQ(G5.order(), 625u);
  EXPECT_EQ(nilpotency_class(G5), 3);
}

TEST(Catalog, WreathAndOrder27) {
  FiniteGroup W = cat("wreath", 3);
  EXPECT_EQ(W.order(), 81u);
  EXPECT_TRUE(is_maximal_class(W));
  // the five groups of order 27 are pairwise distinguished by
  // (abelian, exponent, number of elements of order 3)
  std::set<std::tuple<bool, std::uint64_t, int>> seen;
  for (int i = 0; i < 5; ++i) {
    FiniteGroup G = cat("order27", 3, {{"index", {i}}});
    EXPECT_EQ(G.order(), 27u);
    int threes = 0;
    for (Elem x = 0; x < 27; ++x) threes += G.element_order(x) == 3;
    seen.insert({G.is_abelian(), G.exponent(), threes});
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Catalog, UnitriangularMatchesHeisenbergStatistics) {
  FiniteGroup U = cat("unitriangular", 3, {{"n", {3}}, {"m", {1}}});
  FiniteGroup H = cat("heisenberg", 3);
  EXPECT_EQ(U.order(), H.order());
  EXPECT_EQ(U.exponent(), H.exponent());
  EXPECT_EQ(nilpotency_class(U), nilpotency_class(H));
  EXPECT_EQ(center(U).order(), center(H).order());
}

TEST(Catalog, KirillovQuotientOrders) {
  EXPECT_EQ(cat("kirillov_quotient", 3, {{"e", {1}}}).order(), 81u);
  EXPECT_EQ(cat("kirillov_quotient", 3, {{"e", {2}}}).order(), 6561u);
}

TEST(Catalog, LabelsEncodeParameters) {
  EXPECT_EQ(make_ref("abelian", 3, {{"type", {2, 1}}}).label(), "abelian(prime=3,type=2:1)");
  EXPECT_EQ(make_ref("heisenberg", 5).label(), "heisenberg(prime=5)");
}
