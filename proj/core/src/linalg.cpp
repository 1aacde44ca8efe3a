#include "tssb/linalg.hpp"

#include "tssb/errors.hpp"

#include <Eigen/Cholesky>

#include <string>

namespace tssb {

bool is_positive_definite(const Eigen::MatrixXd &m) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite())
    return false;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd &m,
                               std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite())
    throw NumericError(std::string(what) + " is not a finite square matrix");
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericError(std::string(what) + " is not positive definite");
  return llt.matrixL();
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd &m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite())
    throw NumericError(std::string(what) + " is not a finite square matrix");
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericError(std::string(what) + " is not positive definite");
  const Eigen::MatrixXd inv =
      llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  return symmetrize(inv);
}

double log_det_spd(const Eigen::MatrixXd &m, std::string_view what) {
  const Eigen::MatrixXd l = cholesky_lower(m, what);
  return 2.0 * l.diagonal().array().log().sum();
}

} // namespace tssb
