#pragma once

#include "tssb/tree.hpp"

#include <Eigen/Core>

#include <vector>

namespace tssb {

/// Prior constants of the truncated TS-SBP mixture of Gaussians.
///
/// Per-inner-node entries (alpha, a, b) are indexed by inner node id; per-node
/// entries (nu, W) by node id.
struct Hyperparams {
  std::vector<Eigen::VectorXd> alpha; ///< Dirichlet routing prior, K entries
  Eigen::VectorXd a;                  ///< Beta prior on g_s, first shape
  Eigen::VectorXd b;                  ///< Beta prior on g_s, second shape
  Eigen::VectorXd nu;                 ///< Wishart dof for Lambda_s
  std::vector<Eigen::MatrixXd> W;     ///< Wishart scale for Lambda_s
  double u = 0.0;                     ///< Wishart dof for the chain precision
  Eigen::MatrixXd V;                  ///< Wishart scale for the chain precision
  Eigen::VectorXd root_mean;          ///< mean of the root's parent

  [[nodiscard]] int dim() const noexcept {
    return static_cast<int>(root_mean.size());
  }

  /// Same constants at every node, W and V given as multiples of identity.
  static Hyperparams uniform(const TreeShape &shape, int p, double a, double b,
                             double alpha, double u, double v_scale,
                             double nu, double w_scale);

  /// The toy-experiment values: a=3, b=1, alpha=1/2, m=0, u=5, V=I/10,
  /// nu=2, W=I/5.
  static Hyperparams toy(const TreeShape &shape, int p = 2);

  /// Throws DomainError naming the first violated constraint.
  void validate(const TreeShape &shape) const;
};

/// Ground-truth generative parameters.
struct ModelParams {
  TreeShape shape;
  std::vector<Eigen::VectorXd> routing; ///< pi_s per inner node, sums to 1
  Eigen::VectorXd spread;               ///< g_s per node, 0 on leaves
  std::vector<Eigen::VectorXd> mean;    ///< mu_s per node
  std::vector<Eigen::MatrixXd> precision; ///< Lambda_s per node
  Eigen::MatrixXd chain_precision;        ///< L

  explicit ModelParams(const TreeShape &s) : shape(s) {}

  [[nodiscard]] int dim() const noexcept {
    return mean.empty() ? 0 : static_cast<int>(mean.front().size());
  }

  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

} // namespace tssb
