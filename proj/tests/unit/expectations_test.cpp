#include "oracles.hpp"

#include "tssb/errors.hpp"
#include "tssb/expectations.hpp"
#include "tssb/rng.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>

using namespace tssb;
using namespace tssb::vb;

TEST(DirichletWeight, UniformPair) {
  const Eigen::Vector2d flat(1.0, 1.0);
  EXPECT_NEAR(expected_log_dirichlet_weight(flat, 0), -1.0, 1e-14);
  EXPECT_NEAR(expected_log_dirichlet_weight(flat, 1), -1.0, 1e-14);
  // Dir(1,1) marginal is Beta(1,1): E ln U by quadrature
  EXPECT_NEAR(tssb::testing::expected_log_beta_by_integral(1.0, 1.0), -1.0, 1e-12);
}

TEST(DirichletWeight, SymmetryAndConcentration) {
  const Eigen::Vector3d sym(0.7, 0.7, 0.7);
  EXPECT_EQ(expected_log_dirichlet_weight(sym, 0),
            expected_log_dirichlet_weight(sym, 2));
  const Eigen::Vector3d heavy(1e6, 1.0, 2.0);
  EXPECT_NEAR(expected_log_dirichlet_weight(heavy, 0), 0.0, 1e-5);
  EXPECT_THROW((void)expected_log_dirichlet_weight(Eigen::Vector2d(1.0, 0.0), 0),
               DomainError);
}

TEST(DirichletWeight, BetaMarginalByQuadrature) {
  for (auto [a, b] : {std::pair{0.6, 2.0}, {3.5, 1.2}, {7.0, 7.0}}) {
    const Eigen::Vector2d alpha(a, b);
    EXPECT_NEAR(expected_log_dirichlet_weight(alpha, 0),
                tssb::testing::expected_log_beta_by_integral(a, b), 1e-10);
  }
}

TEST(SpreadExpectations, Values) {
  const auto unit = expected_log_g(1.0, 1.0);
  EXPECT_NEAR(unit.ln_g, -1.0, 1e-14);
  EXPECT_NEAR(unit.ln_gc, -1.0, 1e-14);
  const auto sym = expected_log_g(2.3, 2.3);
  EXPECT_EQ(sym.ln_g, sym.ln_gc);
  EXPECT_NEAR(expected_log_g(1e7, 2.0).ln_g, 0.0, 1e-6);
  for (auto [a, b] : {std::pair{0.4, 0.9}, {3.0, 1.0}, {12.0, 5.5}}) {
    const auto e = expected_log_g(a, b);
    EXPECT_NEAR(e.ln_g, tssb::testing::expected_log_beta_by_integral(a, b), 1e-10);
    EXPECT_NEAR(e.ln_gc, tssb::testing::expected_log_beta_by_integral(b, a), 1e-10);
  }
  EXPECT_THROW((void)expected_log_g(0.0, 1.0), DomainError);
  EXPECT_THROW((void)expected_log_g(1.0, -2.0), DomainError);
}

namespace {

struct GaussianFactors {
  Eigen::VectorXd m;
  Eigen::MatrixXd L, W;
  double nu;
};

GaussianFactors example_factors() {
  GaussianFactors f;
  f.m = Eigen::Vector2d(0.5, -1.0);
  f.L.resize(2, 2);
  f.L << 3.0, 0.4, 0.4, 2.0;
  f.W.resize(2, 2);
  f.W << 0.5, 0.1, 0.1, 0.3;
  f.nu = 6.0;
  return f;
}

double log_normal_density(const Eigen::VectorXd &x, const Eigen::VectorXd &mu,
                          const Eigen::MatrixXd &precision) {
  const Eigen::VectorXd d = x - mu;
  return 0.5 * std::log(precision.determinant()) -
         0.5 * x.size() * std::log(2.0 * M_PI) - 0.5 * d.dot(precision * d);
}

} // namespace

TEST(ExpectedLogGaussian, PointMassLimit) {
  const double nu = 1e9;
  const Eigen::MatrixXd w = Eigen::MatrixXd::Constant(1, 1, 1.0 / nu);
  const Eigen::MatrixXd l = Eigen::MatrixXd::Constant(1, 1, 1e12);
  const Eigen::VectorXd m = Eigen::VectorXd::Constant(1, 0.3);
  EXPECT_NEAR(expected_log_gaussian(m, m, l, nu, w), -0.5 * std::log(2 * M_PI),
              1e-6);
}

TEST(ExpectedLogGaussian, MonteCarlo) {
  const GaussianFactors f = example_factors();
  const Eigen::VectorXd x = Eigen::Vector2d(1.5, 0.2);
  Rng rng(31);
  const Eigen::MatrixXd l_factor = Eigen::LLT<Eigen::MatrixXd>(f.L).matrixL();
  const int draws = 100000;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd mu = rng.gaussian_from_precision_factor(f.m, l_factor);
    const Eigen::MatrixXd lambda = rng.wishart(f.nu, f.W);
    const double v = log_normal_density(x, mu, lambda);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sq / draws - mean * mean) / draws);
  EXPECT_NEAR(expected_log_gaussian(x, f.m, f.L, f.nu, f.W), mean, 3.0 * se);
}

TEST(ExpectedLogGaussian, TranslationInvariantAndBatchConsistent) {
  const GaussianFactors f = example_factors();
  const Eigen::VectorXd x = Eigen::Vector2d(-2.0, 4.0);
  const Eigen::VectorXd shift = Eigen::Vector2d(7.5, -3.25);
  EXPECT_NEAR(expected_log_gaussian(x, f.m, f.L, f.nu, f.W),
              expected_log_gaussian(x + shift, f.m + shift, f.L, f.nu, f.W),
              1e-12);

  const GaussianTerm term = make_gaussian_term(f.m, f.L, f.nu, f.W);
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, -1, 3.5, 2;
  const Eigen::VectorXd batch = term.batch(pts);
  for (Eigen::Index i = 0; i < 3; ++i) {
    const Eigen::VectorXd xi = pts.row(i).transpose();
    EXPECT_NEAR(batch[i], term(xi), 1e-12);
    EXPECT_NEAR(batch[i], expected_log_gaussian(xi, f.m, f.L, f.nu, f.W),
                1e-12);
  }
}

TEST(ExpectedLogGaussian, NonPositiveDefiniteFactor) {
  GaussianFactors f = example_factors();
  f.W(0, 0) = -1.0;
  EXPECT_THROW((void)expected_log_gaussian(f.m, f.m, f.L, f.nu, f.W),
               NumericError);
}

TEST(ExpectedLogDetWishart, MonteCarlo) {
  const GaussianFactors f = example_factors();
  Rng rng(2);
  double sum = 0.0;
  const int draws = 50000;
  for (int k = 0; k < draws; ++k)
    sum += std::log(rng.wishart(f.nu, f.W).determinant());
  EXPECT_NEAR(expected_log_det_wishart(f.nu, f.W), sum / draws, 0.01);
}
