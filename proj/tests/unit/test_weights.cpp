#include "ultradist/weights.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace ultradist;

TEST(Weights, GevreyHalfValues) {
  const WeightSequence w = gevrey(0.5, 4);
  EXPECT_TRUE(w.is_exact());
  EXPECT_DOUBLE_EQ(w.value(0), 1.0);
  EXPECT_DOUBLE_EQ(w.value(1), 1.0);
  EXPECT_DOUBLE_EQ(w.value(2), 1.4142135623730951);
  EXPECT_THROW(gevrey(0.5, 2), std::invalid_argument);
  EXPECT_THROW(gevrey(0.0, 10), std::invalid_argument);
}

TEST(Weights, GevreyIntegerValues) {
  const WeightSequence w = gevrey(2.0, 4);
  EXPECT_EQ(w.to_strings(), (std::vector<std::string>{"1", "1", "4", "36", "576"}));
}

TEST(Weights, GevreyOverflowsToInfinityButKeepsLogs) {
  const WeightSequence w = gevrey(2.0, 400);
  EXPECT_TRUE(std::isinf(w.value(400)));
  EXPECT_NEAR(w.log_value(400), 2.0 * std::lgamma(401.0), 1e-9 * w.log_value(400));
}

TEST(Weights, RejectsBadFirstValue) {
  EXPECT_THROW(WeightSequence::from_values({2.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(WeightSequence::from_values({1.0, -1.0}), std::invalid_argument);
}

TEST(Weights, DecimalStringsAreExact) {
  const std::vector<std::string> v{"1", "1.5", "9/4"};
  const WeightSequence w = WeightSequence::from_decimal_strings(v);
  EXPECT_TRUE(w.is_exact());
  EXPECT_EQ(w.to_strings(), (std::vector<std::string>{"1", "3/2", "9/4"}));
}

TEST(Weights, M1ExactOnGevrey) {
  const ConditionWitness c = check_m1(gevrey(2.0, 10));
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.exact_arithmetic);
}

TEST(Weights, M1DetectsNonConvexity) {
  const ConditionWitness c = check_m1(WeightSequence::from_values({1.0, 4.0, 4.0, 100.0}));
  EXPECT_FALSE(c.holds);
  ASSERT_FALSE(c.violations.empty());
  EXPECT_EQ(c.violations.front().p, 1u);
}

TEST(Weights, M2PicksFirstStableH) {
  const std::vector<double> grid{1, 2, 3, 4, 8};
  const ConditionWitness g2 = check_m2(gevrey(2.0, 50), grid);
  EXPECT_TRUE(g2.holds);
  EXPECT_EQ(g2.H, 4.0);
  EXPECT_EQ(g2.A, 1.0);
  const ConditionWitness g1 = check_m2(gevrey(1.0, 50), grid);
  EXPECT_TRUE(g1.holds);
  EXPECT_EQ(g1.H, 2.0);
  EXPECT_EQ(g1.A, 1.0);
}

TEST(Weights, M2FailsWhenGridTooSmall) {
  const std::vector<double> grid{1, 2};
  EXPECT_FALSE(check_m2(gevrey(2.0, 50), grid).holds);
}

TEST(Weights, M3TruncatedGevrey) {
  EXPECT_TRUE(check_m3(gevrey(2.0, 400), 4.0).holds);
  const ConditionWitness g1 = check_m3(gevrey(1.0, 400), 4.0);
  EXPECT_FALSE(g1.holds);
  EXPECT_EQ(g1.violation_count, 10u);
  ASSERT_EQ(g1.violations.size(), 10u);
  EXPECT_EQ(g1.violations.front().p, 1u);
  EXPECT_EQ(g1.violations.back().p, 10u);
  EXPECT_EQ(g1.scope, "conclusive violation");
}

TEST(Weights, Submultiplicative) {
  EXPECT_TRUE(check_submultiplicative(gevrey(2.0, 60)).holds);
  EXPECT_FALSE(check_submultiplicative(WeightSequence::from_values({1.0, 2.0, 3.0})).holds);
}

TEST(Weights, AssociatedFunction) {
  std::vector<double> logs(10);
  for (std::size_t p = 0; p < logs.size(); ++p) logs[p] = std::lgamma(static_cast<double>(p) + 1.0);
  const AssociatedValue m = associated_function(WeightSequence::from_log_values(logs), 2.0);
  EXPECT_NEAR(m.value, 0.6931471805599453, 1e-15);
  EXPECT_EQ(m.argmax_p, 1u);
  EXPECT_FALSE(m.truncated);
}

TEST(Weights, MultiIndexUsesTotalOrder) {
  const std::vector<std::size_t> k{1, 3};
  EXPECT_DOUBLE_EQ(multi_index_value(gevrey(2.0, 10), k), 576.0);
}

TEST(Weights, JsonRoundTrip) {
  const WeightSequence w = gevrey(1.0, 20);
  const WeightSequence back = weights_from_json(weights_to_json(w));
  EXPECT_EQ(back.to_strings(), w.to_strings());
  EXPECT_TRUE(back.is_exact());
}
