#include "tssb/errors.hpp"
#include "tssb/metrics.hpp"

#include <gtest/gtest.h>

using namespace tssb;

TEST(AdjustedRand, IdentityAndRelabel) {
  const std::vector<long> a = {0, 0, 1, 1, 2, 2, 2};
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, a), 1.0);
  const std::vector<long> renamed = {5, 5, 9, 9, -1, -1, -1};
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, renamed), 1.0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index({3, 3, 3}, {1, 1, 1}), 1.0);
}

TEST(AdjustedRand, ReferenceValues) {
  // pair-counting by hand: 6 items, contingency [[2,1,0],[0,1,2]]
  EXPECT_NEAR(adjusted_rand_index({0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2}),
              8.0 / 33.0, 1e-15);
  EXPECT_NEAR(adjusted_rand_index({0, 0, 1, 2}, {1, 1, 0, 0}), 4.0 / 7.0,
              1e-15);
  EXPECT_NEAR(adjusted_rand_index({0, 1, 2, 3}, {0, 0, 0, 0}), 0.0, 1e-15);
}

TEST(AdjustedRand, Errors) {
  EXPECT_THROW((void)adjusted_rand_index({0, 1}, {0}), DomainError);
  EXPECT_THROW((void)adjusted_rand_index({0}, {0}), DomainError);
}
