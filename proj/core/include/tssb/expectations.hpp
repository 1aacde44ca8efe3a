#pragma once

#include <Eigen/Core>

namespace tssb::vb {

/// E[ln pi_ch] under Dir(alpha_hat) = psi(alpha_hat_ch) - psi(sum alpha_hat).
[[nodiscard]] double expected_log_dirichlet_weight(
    const Eigen::VectorXd &alpha_hat, int ch);

struct SpreadLogExpectations {
  double ln_g;  ///< E[ln g]
  double ln_gc; ///< E[ln(1 - g)]
};

/// Log expectations of g ~ Beta(a_hat, b_hat).
[[nodiscard]] SpreadLogExpectations expected_log_g(double a_hat, double b_hat);

/// E[ln |Lambda|] for Lambda ~ W(dof, scale).
[[nodiscard]] double expected_log_det_wishart(double dof,
                                              const Eigen::MatrixXd &scale);

/// E[ln N(x | mu, Lambda^{-1})] with mu ~ N(m_hat, L_hat^{-1}) and
/// Lambda ~ W(nu_hat, W_hat) independent.
[[nodiscard]] double expected_log_gaussian(const Eigen::VectorXd &x,
                                           const Eigen::VectorXd &m_hat,
                                           const Eigen::MatrixXd &L_hat,
                                           double nu_hat,
                                           const Eigen::MatrixXd &W_hat);

/// Everything in expected_log_gaussian that does not depend on x, so that
/// value(x) = offset - 0.5 * nu_hat * |factor^T (x - m_hat)|^2.
struct GaussianTerm {
  double offset;
  double nu_hat;
  Eigen::VectorXd m_hat;
  Eigen::MatrixXd factor; ///< lower Cholesky factor of W_hat

  [[nodiscard]] double operator()(const Eigen::VectorXd &x) const;
  /// One value per row of `points` (n x p).
  [[nodiscard]] Eigen::VectorXd batch(const Eigen::MatrixXd &points) const;
};

[[nodiscard]] GaussianTerm make_gaussian_term(const Eigen::VectorXd &m_hat,
                                              const Eigen::MatrixXd &L_hat,
                                              double nu_hat,
                                              const Eigen::MatrixXd &W_hat);

} // namespace tssb::vb
