#include "ultradist/units.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ultradist;

namespace {
UnitCheckOptions options() {
  UnitCheckOptions o;
  o.r_samples = {linear_rsequence(3.0, 12), power_rsequence(2.0, 12)};
  o.compacts = {{-1.0, 1.0}, {-5.0, 5.0}};
  o.h_samples = {0.5, 1.0, 2.0};
  o.grid = {kDefaultGridPoints, 4.0};
  return o;
}
}  // namespace

TEST(Units, ScaledCutoffFamilyIsSpecialUnit) {
  const UnitReport rep = verify_unit(scaled_cutoff_family(cutoff(1.0, 2.0), 20), gevrey(2.0, 12), options());
  EXPECT_TRUE(rep.passes);
  EXPECT_TRUE(rep.bounded);
  EXPECT_TRUE(rep.converges);
  ASSERT_TRUE(rep.special_verified.has_value());
  EXPECT_TRUE(*rep.special_verified);
  for (const auto& b : rep.boundedness) EXPECT_EQ(b.argmax_n, 1u);
  ASSERT_EQ(rep.special.size(), 2u);
  EXPECT_EQ(rep.special[0].cover_index, 1u);
  EXPECT_EQ(rep.special[1].cover_index, 5u);
}

TEST(Units, WideningFamily) {
  const UnitReport rep = verify_unit(widening_cutoff_family(1.0, 20), gevrey(2.0, 12), options());
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.special[1].cover_index, 5u);
}

TEST(Units, ModulatedFamilyIsPlain) {
  const UnitReport rep = verify_unit(modulated_family(cutoff(1.0, 2.0), 30), gevrey(2.0, 12), options());
  EXPECT_TRUE(rep.passes);
  EXPECT_FALSE(rep.special_verified.has_value());
  for (const auto& c : rep.convergence) EXPECT_EQ(c.exact_zero_from, 0u);
}

TEST(Units, DivergentFamilyIsRejected) {
  // pi_n = cutoff(n, n+1) * (1 + sin x / 2): never converges to 1.
  const ApproximateUnitFamily bad("bad", UnitKind::Plain, 10, [](std::size_t n) {
    const double a = static_cast<double>(n);
    return cutoff(a, a + 1.0) * (Expr::constant(1.0) + Expr::constant(0.5) * Expr::sin(Expr::variable()));
  });
  const UnitReport rep = verify_unit(bad, gevrey(2.0, 12), options());
  EXPECT_FALSE(rep.converges);
  EXPECT_FALSE(rep.passes);
}

TEST(Units, FamilyIndexChecks) {
  const auto fam = scaled_cutoff_family(cutoff(1.0, 2.0), 5);
  EXPECT_THROW(fam.member(0), std::out_of_range);
  EXPECT_THROW(fam.member(6), std::out_of_range);
  EXPECT_EQ(fam.plateau(3), (Interval{-3.0, 3.0}));
}

TEST(Units, DisjointSum) {
  const std::vector<Expr> ok{translate(cutoff(0.5, 1.0), -3.0), translate(cutoff(0.5, 1.0), 3.0)};
  EXPECT_EQ(disjoint_sum(ok).support(), (Interval{-4.0, 4.0}));
  const std::vector<Expr> overlap{cutoff(0.5, 1.0), translate(cutoff(0.5, 1.0), 1.5)};
  EXPECT_THROW(disjoint_sum(overlap), std::invalid_argument);
}

TEST(Units, PerturbationsStayOutsideAndNormalise) {
  const WeightSequence w = gevrey(2.0, 12);
  std::vector<Expr> psi;
  for (std::size_t m = 1; m <= 6; ++m) {
    const NormalizedPerturbation p = normalized_perturbation(m, w, 12);
    EXPECT_NEAR(p.norm, 1.0 / static_cast<double>(m), 1e-12);
    psi.push_back(p.psi);
  }
  const auto fam = perturb_family(scaled_cutoff_family(cutoff(1.0, 2.0), 6), psi);
  EXPECT_EQ(fam.name(), "scaled+psi");
  EXPECT_NE(fam.member(2)(7.0), 0.0);

  std::vector<Expr> inside(6, cutoff(0.5, 1.0));
  EXPECT_THROW(perturb_family(scaled_cutoff_family(cutoff(1.0, 2.0), 6), inside), std::invalid_argument);
}

TEST(Units, ChainIsDecreasing) {
  const RSequence a = chain_rsequence(1, 12), b = chain_rsequence(2, 12);
  for (std::size_t p = 0; p <= 12; ++p) EXPECT_LE(b[p], a[p]);
}
