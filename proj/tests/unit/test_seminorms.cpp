#include "ultradist/corpus.hpp"
#include "ultradist/seminorms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ultradist;

TEST(Seminorms, CutoffRNormMatchesOracle) {
  const Expr c = cutoff(1.0, 2.0);
  const RSequence r = power_rsequence(1.0, 12);  // r_p = p + 1
  const SeminormReport rep = r_norm(c, Grid::for_expr(c, -2.0, 2.0, 401), r, gevrey(1.0, 12), 12);
  EXPECT_NEAR(rep.value, 17.0160834633602, 1e-8);
  EXPECT_EQ(rep.argmax_k, 12u);
  EXPECT_TRUE(rep.truncation_active);
  const std::vector<double> want{1.0, 1.0, 0.8199065, 0.76288996, 0.77768091, 0.88851716, 1.3245313,
                                 2.0831516, 3.226541, 5.1124477, 6.4099774, 12.490643, 17.016083};
  ASSERT_EQ(rep.ratios.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(rep.ratios[k], want[k], 1e-6 * want[k]);
}

TEST(Seminorms, TiesResolveToSmallestOrder) {
  DerivativeSups s;
  s.sup = {2.0, 2.0, 1.0};
  s.argmax_x = {0.0, 0.1, 0.2};
  const std::vector<double> denoms{0.0, 0.0, 0.0};
  const SeminormReport rep = seminorm_from_sups(s, denoms);
  EXPECT_EQ(rep.value, 2.0);
  EXPECT_EQ(rep.argmax_k, 0u);
  EXPECT_FALSE(rep.truncation_active);
}

TEST(Seminorms, HugeDenominatorsStayFinite) {
  DerivativeSups s;
  s.sup = {1.0, 1e300};
  s.argmax_x = {0.0, 0.0};
  const std::vector<double> denoms{0.0, 800.0};
  const SeminormReport rep = seminorm_from_sups(s, denoms);
  EXPECT_EQ(rep.argmax_k, 0u);
  EXPECT_GT(rep.ratios[1], 0.0);
  EXPECT_LT(rep.ratios[1], 1e-40);
}

TEST(Seminorms, QNormOfConstantIsItsValue) {
  const SeminormReport rep =
      q_norm(Expr::constant(3.0), Grid::uniform(-1.0, 1.0, 11), 2.0, gevrey(2.0, 12), 12);
  EXPECT_EQ(rep.value, 3.0);
  EXPECT_EQ(rep.argmax_k, 0u);
}

TEST(Seminorms, GlobalNormNeedsCompactSupport) {
  EXPECT_THROW(global_r_norm(Expr::variable(), linear_rsequence(3.0, 12), gevrey(2.0, 12), 12),
               std::invalid_argument);
  EXPECT_THROW(r_log_denominators(linear_rsequence(3.0, 5), gevrey(2.0, 12), 12), std::invalid_argument);
}

TEST(Seminorms, NormIsTranslationInvariant) {
  const Expr c = cutoff(1.0, 2.0);
  const RSequence r = linear_rsequence(3.0, 12);
  const WeightSequence w = gevrey(2.0, 12);
  const double a = global_r_norm(c, r, w, 12).value;
  const double b = global_r_norm(translate(c, 16.0), r, w, 12).value;
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Seminorms, Halve) {
  const RSequence h = halve(linear_rsequence(3.0, 6));
  EXPECT_EQ(h[0], 1.0);
  EXPECT_EQ(h[1], 1.5);
  EXPECT_EQ(h[4], 6.0);
  const RSequence h2 = halve(linear_rsequence(2.0, 6));
  EXPECT_EQ(h2[1], 1.0);
  EXPECT_EQ(h2[3], 3.0);
}

TEST(Seminorms, ProductInequalityOnCorpusPairs) {
  const auto corpus = corpus_exprs(standard_corpus(kDefaultSeed, 8));
  const RSequence r = linear_rsequence(3.0, 12);
  const WeightSequence w = gevrey(2.0, 12);
  for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
    const Interval span = hull(corpus[i].support(), corpus[i + 1].support());
    const Grid g = Grid::for_expr(corpus[i] * corpus[i + 1], span.lo, span.hi, 401);
    const ProductInequalityReport rep = check_product_inequality(corpus[i], corpus[i + 1], r, w, g, 12);
    EXPECT_TRUE(rep.holds) << i << ": " << rep.lhs << " > " << rep.rhs;
  }
  EXPECT_THROW(check_product_inequality(corpus[0], corpus[1], linear_rsequence(2.0, 12), w,
                                        Grid::uniform(-1, 1, 11), 12),
               std::invalid_argument);
}

TEST(Seminorms, CutoffEstimate) {
  const auto corpus = corpus_exprs(standard_corpus(kDefaultSeed, 6));
  const std::vector<double> ls{1, 2, 4, 8};
  const CutoffEstimate est =
      cutoff_constant_estimate(cutoff(1.0, 2.0), linear_rsequence(3.0, 12), corpus, ls, gevrey(2.0, 12), 12);
  EXPECT_TRUE(std::isfinite(est.constant));
  EXPECT_GT(est.constant, 0.0);
  EXPECT_EQ(est.ratios.size(), corpus.size() * ls.size());
  // theta_8 is 1 on [-8, 8], which contains every corpus support.
  for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(est.ratios[i * ls.size() + 3], 0.0);
  EXPECT_THROW(cutoff_constant_estimate(cutoff(1.0, 2.0), linear_rsequence(1.5, 12), corpus, ls, gevrey(2.0, 12), 12),
               std::invalid_argument);
}
