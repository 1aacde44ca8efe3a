#include "tssb/errors.hpp"
#include "tssb/generative.hpp"
#include "tssb/model.hpp"

#include <gtest/gtest.h>

using namespace tssb;

TEST(Hyperparams, ToyValues) {
  const TreeShape t(2, 3);
  const Hyperparams h = Hyperparams::toy(t);
  ASSERT_EQ(h.alpha.size(), t.inner_count());
  ASSERT_EQ(h.a.size(), 7);
  ASSERT_EQ(h.nu.size(), 15);
  for (const auto &a : h.alpha)
    EXPECT_EQ(a, Eigen::Vector2d(0.5, 0.5));
  EXPECT_EQ(h.a, Eigen::VectorXd::Constant(7, 3.0));
  EXPECT_EQ(h.b, Eigen::VectorXd::Constant(7, 1.0));
  EXPECT_EQ(h.nu, Eigen::VectorXd::Constant(15, 2.0));
  EXPECT_EQ(h.u, 5.0);
  EXPECT_EQ(h.V, 0.1 * Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(h.W[14], 0.2 * Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(h.root_mean, Eigen::VectorXd::Zero(2));
  EXPECT_NO_THROW(h.validate(t));
}

TEST(Hyperparams, DomainChecks) {
  const TreeShape t(2, 2);
  Hyperparams h = Hyperparams::toy(t);
  h.nu[3] = 1.0; // p - 1
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.u = 0.5;
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.a[0] = 0.0;
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.alpha[1][0] = -1.0;
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.W[0](0, 1) = 0.3; // asymmetric
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.V = -h.V;
  EXPECT_THROW(h.validate(t), DomainError);
  h = Hyperparams::toy(t);
  h.W.pop_back();
  EXPECT_THROW(h.validate(t), DomainError);
  EXPECT_THROW(Hyperparams::toy(TreeShape(2, 3)).validate(t), DomainError);
}

TEST(ModelParams, Invariants) {
  const TreeShape t(2, 2);
  ModelParams params = sample_parameters(t, Hyperparams::toy(t), 1);
  EXPECT_NO_THROW(params.validate());
  ModelParams bad = params;
  bad.spread[5] = 0.2; // a leaf
  EXPECT_THROW(bad.validate(), DomainError);
  bad = params;
  bad.routing[0][0] += 1e-9;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = params;
  bad.spread[0] = 1.5;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = params;
  bad.precision[2] = -bad.precision[2];
  EXPECT_THROW(bad.validate(), DomainError);
}
