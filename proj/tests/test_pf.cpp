// Potency, power-surjectivity, potent filtrations and the Omega exponent
// bound. Filtrations are re-validated here element by element.

#include <gtest/gtest.h>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

FiniteGroup cat(const std::string& name, int p, CatalogParams extra = {}) { return make_ref(name, p, extra).build(); }

Subgroup comm_by_definition(const FiniteGroup& G, const Subgroup& A) {
  SubgroupBuilder b(G);
  for (Elem a : A.elements())
    for (Elem g = 0; g < G.order(); ++g) b.add(G.commutator(a, g));
  return std::move(b).build();
}

Subgroup pow_by_definition(const FiniteGroup& G, const Subgroup& A) {
  SubgroupBuilder b(G);
  for (Elem a : A.elements()) b.add(G.pow(a, G.prime()));
  return std::move(b).build();
}

// Both filtration conditions at every step, with [K, _{p-1} G] expanded by
// repeated element-wise commutators.
void expect_valid_filtration(const FiniteGroup& G, const std::vector<Subgroup>& t) {
  ASSERT_FALSE(t.empty());
  EXPECT_TRUE(t.back().is_trivial());
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    EXPECT_TRUE(t[i + 1].is_subgroup_of(t[i]));
    EXPECT_TRUE(comm_by_definition(G, t[i]).is_subgroup_of(t[i + 1])) << "step " << i;
    Subgroup D = t[i];
    for (std::uint32_t k = 0; k + 1 < G.prime(); ++k) D = comm_by_definition(G, D);
    EXPECT_TRUE(D.is_subgroup_of(pow_by_definition(G, t[i + 1]))) << "step " << i;
  }
}

}  // namespace

TEST(Potent, Examples) {
  EXPECT_FALSE(is_potent(cat("heisenberg", 3)));
  EXPECT_TRUE(is_potent(cat("heisenberg", 5)));
  EXPECT_TRUE(is_potent(cat("modular", 3)));
  EXPECT_TRUE(is_potent(cat("potent_nopwc", 5, {{"n", {1}}})));
}

TEST(PowerSurjective, AbelianAndMannGroup) {
  FiniteGroup A = cat("abelian", 3, {{"type", {3, 2}}});
  for (int i = 0; i <= 3; ++i) EXPECT_TRUE(is_power_surjective(A, i));
  EXPECT_FALSE(is_power_surjective(cat("mann_nonpf", 3), 1));
}

TEST(MannGroup, PowerOfAlphaTimesFirstModuleGenerator) {
  // G = <alpha> x| C_3^3 with alpha of order 9; index a*27 + m, module
  // generators x_1, x_2, x_3 at 1, 3, 9.
  FiniteGroup G = cat("mann_nonpf", 3);
  ASSERT_EQ(G.order(), 243u);
  const Elem alpha = 27, x1 = 1, x3 = 9;
  EXPECT_EQ(G.pow(G.mul(alpha, x1), 3), G.mul(G.pow(alpha, 3), x3));
  Subgroup P = power_subgroup(G, whole_group(G), 1);
  EXPECT_TRUE(P.contains(x3));
  EXPECT_FALSE(power_image(G, whole_group(G), 1).test(x3));
  EXPECT_EQ(nilpotency_class(G), 3);
  EXPECT_EQ(coclass(G), 2);
}

TEST(PotentFiltration, DefectReporting) {
  FiniteGroup H = cat("heisenberg", 3);
  Subgroup W = whole_group(H), Z = center(H), one = trivial_subgroup(H);
  EXPECT_EQ(potent_filtration_defect(H, {W, Z, one}), "");
  EXPECT_NE(potent_filtration_defect(H, {W, one}), "");
  EXPECT_NE(potent_filtration_defect(H, {W, Z}), "") << "must reach 1";
  EXPECT_NE(potent_filtration_defect(H, {}), "");
}

TEST(PfReachability, ExamplesAndWitnesses) {
  auto h = is_pf_group(cat("heisenberg", 3));
  ASSERT_TRUE(h.has_value());
  expect_valid_filtration(h->group, h->terms);
  EXPECT_FALSE(is_pf_group(cat("mann_nonpf", 3)).has_value());
  EXPECT_FALSE(is_pf_group(cat("mainline_coclass1", 3, {{"k", {4}}})).has_value());
  EXPECT_TRUE(is_pf_group(cat("modular", 3)).has_value());
}

TEST(PfReachability, EveryWitnessIsValidAndImpliesPowerSurjective) {
  for (const auto& c : catalog_instances()) {
    if (instance_order(c) > 729) continue;
    FiniteGroup G = c.ref.build();
    NormalLattice L(G);
    PfSearch search(L);
    for (std::size_t i = 0; i < L.size(); ++i) {
      auto f = search.filtration_of(L[i]);
      if (!f) continue;
      EXPECT_EQ(potent_filtration_defect(G, f->terms), "") << G.label();
      EXPECT_EQ(f->terms.front(), L[i]);
    }
    auto whole = search.filtration_of(L[L.whole_index()]);
    if (whole) {
      expect_valid_filtration(G, whole->terms);
      EXPECT_TRUE(is_power_surjective(G, 1)) << G.label();
    }
  }
}

TEST(SmallHeightFiltration, HeisenbergTrivialAndPotentGroup) {
  FiniteGroup H = cat("heisenberg", 3);
  PotentFiltration f = small_height_filtration(H, whole_group(H), upper_central_series(H));
  ASSERT_EQ(f.terms.size(), 3u);
  EXPECT_EQ(f.terms[1], center(H));
  expect_valid_filtration(H, f.terms);

  SubgroupSeries just_one{SeriesKind::Custom, Direction::Ascending, {trivial_subgroup(H)}};
  PotentFiltration t = small_height_filtration(H, trivial_subgroup(H), just_one);
  EXPECT_EQ(t.terms.size(), 1u);

  FiniteGroup P = cat("potent_nopwc", 5, {{"n", {1}}});
  EtaReport r = upper_eta_series(P);
  ASSERT_EQ(r.powerful_class, 4);
  PotentFiltration fp = small_height_filtration(P, whole_group(P), r.series);
  EXPECT_EQ(potent_filtration_defect(P, fp.terms), "");
}

TEST(SmallHeightFiltration, RejectsLongOrInvalidSeries) {
  FiniteGroup G = cat("mann_nonpf", 3);
  EtaReport r = upper_eta_series(G);
  ASSERT_EQ(r.powerful_class, 3);
  EXPECT_THROW(small_height_filtration(G, whole_group(G), r.series), Error) << "length 3 > p - 1";
  FiniteGroup H = cat("heisenberg", 3);
  SubgroupSeries flat{SeriesKind::Custom, Direction::Ascending, {trivial_subgroup(H), whole_group(H)}};
  try {
    small_height_filtration(H, whole_group(H), flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnEtaSeries);
  }
}

TEST(OmegaBound, TablesForExamples) {
  OmegaTable h = omega_exponent_check(cat("heisenberg", 3));
  EXPECT_EQ(h.powerful_class, 2);
  EXPECT_EQ(h.ell, 1);
  ASSERT_EQ(h.rows.size(), 1u);
  EXPECT_EQ(h.rows[0].log_exponent, 1);
  EXPECT_EQ(h.rows[0].log_bound, 2);

  OmegaTable m = omega_exponent_check(cat("mann_nonpf", 3));
  EXPECT_EQ(m.powerful_class, 3);
  EXPECT_EQ(m.ell, 2);
  EXPECT_LE(m.rows.at(0).log_exponent, 3);

  OmegaTable a = omega_exponent_check(cat("abelian", 3, {{"type", {3, 2}}}));
  EXPECT_EQ(a.ell, 1);
  for (const auto& row : a.rows) EXPECT_EQ(row.log_exponent, row.i);
}

TEST(OmegaBound, ViolationIsReported) {
  // UT_4(Z/3) is generated by transvections of order 3 but has exponent 9,
  // so an understated pwc of 0 breaks the bound at i = 1.
  FiniteGroup G = cat("unitriangular", 3, {{"n", {4}}, {"m", {1}}});
  ASSERT_TRUE(omega_subgroup(G, 1).is_whole());
  try {
    omega_exponent_check(G, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TheoremViolated);
  }
  EXPECT_NO_THROW(omega_exponent_check(G));
}
