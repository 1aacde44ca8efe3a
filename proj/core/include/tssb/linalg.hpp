#pragma once

#include <Eigen/Core>

#include <string_view>

namespace tssb {

/// Positive definiteness is defined as Cholesky success on a finite matrix.
[[nodiscard]] bool is_positive_definite(const Eigen::MatrixXd &m);

/// Lower Cholesky factor. Throws NumericError naming `what` on failure.
[[nodiscard]] Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd &m,
                                             std::string_view what);

/// Inverse of an SPD matrix through its Cholesky factor, symmetrized.
[[nodiscard]] Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd &m,
                                          std::string_view what);

/// ln|m| via the Cholesky factor.
[[nodiscard]] double log_det_spd(const Eigen::MatrixXd &m,
                                 std::string_view what);

[[nodiscard]] inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd &m) {
  return 0.5 * (m + m.transpose());
}

} // namespace tssb
