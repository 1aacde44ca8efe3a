#include "tssb/expectations.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"
#include "tssb/special.hpp"

#include <Eigen/Dense>

#include <string>

namespace tssb::vb {

double expected_log_dirichlet_weight(const Eigen::VectorXd &alpha_hat,
                                     int ch) {
  if (ch < 0 || ch >= alpha_hat.size())
    throw DomainError("child index " + std::to_string(ch) + " out of range");
  if (!((alpha_hat.array() > 0.0).all()))
    throw DomainError("Dirichlet parameters must be positive");
  return digamma(alpha_hat[ch]) - digamma(alpha_hat.sum());
}

SpreadLogExpectations expected_log_g(double a_hat, double b_hat) {
  if (!(a_hat > 0.0) || !(b_hat > 0.0))
    throw DomainError("Beta parameters must be positive");
  const double total = digamma(a_hat + b_hat);
  return {digamma(a_hat) - total, digamma(b_hat) - total};
}

double expected_log_det_wishart(double dof, const Eigen::MatrixXd &scale) {
  const int p = static_cast<int>(scale.rows());
  return multi_digamma(dof, p) + p * kLn2 +
         log_det_spd(scale, "Wishart scale");
}

GaussianTerm make_gaussian_term(const Eigen::VectorXd &m_hat,
                                const Eigen::MatrixXd &L_hat, double nu_hat,
                                const Eigen::MatrixXd &W_hat) {
  const int p = static_cast<int>(m_hat.size());
  if (!(nu_hat > p - 1.0))
    throw NumericError("nu_hat must exceed p - 1");
  const Eigen::MatrixXd mean_cov = spd_inverse(L_hat, "L_hat");
  GaussianTerm term;
  term.nu_hat = nu_hat;
  term.m_hat = m_hat;
  term.factor = cholesky_lower(W_hat, "W_hat");
  const double trace = (W_hat.cwiseProduct(mean_cov)).sum();
  term.offset = 0.5 * (expected_log_det_wishart(nu_hat, W_hat) - p * kLn2Pi -
                       nu_hat * trace);
  return term;
}

double GaussianTerm::operator()(const Eigen::VectorXd &x) const {
  const Eigen::VectorXd y = factor.transpose() * (x - m_hat);
  return offset - 0.5 * nu_hat * y.squaredNorm();
}

Eigen::VectorXd GaussianTerm::batch(const Eigen::MatrixXd &points) const {
  const Eigen::MatrixXd y =
      (points.rowwise() - m_hat.transpose()) * factor;
  return (offset - 0.5 * nu_hat * y.rowwise().squaredNorm().array()).matrix();
}

double expected_log_gaussian(const Eigen::VectorXd &x,
                             const Eigen::VectorXd &m_hat,
                             const Eigen::MatrixXd &L_hat, double nu_hat,
                             const Eigen::MatrixXd &W_hat) {
  return make_gaussian_term(m_hat, L_hat, nu_hat, W_hat)(x);
}

} // namespace tssb::vb
