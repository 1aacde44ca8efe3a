#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"
#include "tssb/rng.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>

using namespace tssb;

TEST(Linalg, InverseAndLogDet) {
  Eigen::MatrixXd m(3, 3);
  m << 4, 1, 0.5, 1, 3, 0.2, 0.5, 0.2, 2;
  const Eigen::MatrixXd inv = spd_inverse(m, "m");
  EXPECT_TRUE((inv * m).isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-14));
  EXPECT_EQ(inv, inv.transpose());
  EXPECT_NEAR(log_det_spd(m, "m"), std::log(m.determinant()), 1e-14);
  const Eigen::MatrixXd l = cholesky_lower(m, "m");
  EXPECT_TRUE((l * l.transpose()).isApprox(m, 1e-15));
}

TEST(Linalg, NonPositiveDefiniteIsANumericError) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 1;
  EXPECT_FALSE(is_positive_definite(m));
  EXPECT_THROW((void)spd_inverse(m, "m"), NumericError);
  EXPECT_THROW((void)log_det_spd(m, "m"), NumericError);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Identity(2, 2);
  nan(0, 0) = NAN;
  EXPECT_FALSE(is_positive_definite(nan));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    differs = differs || x != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, SplitIgnoresParentPosition) {
  Rng a(7), b(7);
  for (int k = 0; k < 10; ++k)
    a.uniform();
  Rng sa = a.split(3), sb = b.split(3), other = b.split(4);
  EXPECT_EQ(sa.seed(), sb.seed());
  EXPECT_NE(sa.seed(), other.seed());
  EXPECT_EQ(sa.uniform(), sb.uniform());
}

TEST(Rng, DirichletSymmetricMean) {
  Rng rng(11);
  const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(2, 0.7);
  double sum = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd w = rng.dirichlet(alpha);
    EXPECT_NEAR(w.sum(), 1.0, 1e-12);
    sum += w[0];
  }
  EXPECT_NEAR(sum / draws, 0.5, 0.02);
}

TEST(Rng, WishartMean) {
  Rng rng(5);
  Eigen::MatrixXd v(2, 2);
  v << 0.3, 0.1, 0.1, 0.2;
  const double dof = 5.0;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 2);
  const int draws = 10000;
  for (int k = 0; k < draws; ++k)
    mean += rng.wishart(dof, v);
  mean /= draws;
  const Eigen::MatrixXd expected = dof * v;
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c)
      EXPECT_NEAR(mean(r, c), expected(r, c), 0.05 * std::abs(expected(r, c)));
  EXPECT_THROW((void)rng.wishart(0.5, v), DomainError);
}

TEST(Rng, GaussianFromPrecision) {
  Rng rng(9);
  Eigen::MatrixXd prec(2, 2);
  prec << 2.0, 0.6, 0.6, 1.0;
  const Eigen::MatrixXd factor = cholesky_lower(prec, "precision");
  const Eigen::VectorXd mu = Eigen::Vector2d(1.0, -2.0);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(2, 2);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(2);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd x = rng.gaussian_from_precision_factor(mu, factor);
    first += x;
    second += (x - mu) * (x - mu).transpose();
  }
  first /= draws;
  second /= draws;
  const Eigen::MatrixXd cov = prec.inverse();
  EXPECT_NEAR(first[0], mu[0], 0.01);
  EXPECT_NEAR(first[1], mu[1], 0.01);
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c)
      EXPECT_NEAR(second(r, c), cov(r, c), 0.02);
}

TEST(Rng, CategoricalFrequencies) {
  Rng rng(3);
  const Eigen::Vector3d w(1.0, 2.0, 7.0);
  int counts[3] = {0, 0, 0};
  const int draws = 100000;
  for (int k = 0; k < draws; ++k)
    ++counts[rng.categorical(w)];
  for (int j = 0; j < 3; ++j) {
    const double p = w[j] / 10.0;
    EXPECT_NEAR(counts[j] / double(draws), p,
                4.0 * std::sqrt(p * (1 - p) / draws));
  }
}
