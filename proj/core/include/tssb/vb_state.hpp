#pragma once

#include "tssb/model.hpp"
#include "tssb/parallel.hpp"
#include "tssb/tree.hpp"

#include <Eigen/Core>

#include <vector>

namespace tssb::vb {

/// Row-major n x |S_max| storage: one contiguous row per data point.
using PointNodeMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Everything fixed during learning: the tree, the priors, the data, and
/// prior-side quantities reused by every sweep.
class Problem {
public:
  /// Validates the hyperparameters and the data width. `data` is n x p.
  Problem(TreeShape shape, Hyperparams hyper, Eigen::MatrixXd data,
          Executor exec = Executor{});

  [[nodiscard]] const TreeShape &shape() const noexcept { return shape_; }
  [[nodiscard]] const Hyperparams &hyper() const noexcept { return hyper_; }
  [[nodiscard]] const Eigen::MatrixXd &data() const noexcept { return data_; }
  [[nodiscard]] const Executor &exec() const noexcept { return exec_; }

  [[nodiscard]] std::size_t points() const noexcept {
    return static_cast<std::size_t>(data_.rows());
  }
  [[nodiscard]] std::size_t nodes() const noexcept {
    return shape_.node_count();
  }
  [[nodiscard]] int dim() const noexcept { return hyper_.dim(); }

  /// W_s^{-1} and ln|W_s| per node, V^{-1} and ln|V|.
  [[nodiscard]] const Eigen::MatrixXd &w_inv(NodeId s) const {
    return w_inv_[s];
  }
  [[nodiscard]] double w_logdet(NodeId s) const { return w_logdet_[s]; }
  [[nodiscard]] const Eigen::MatrixXd &v_inv() const noexcept { return v_inv_; }
  [[nodiscard]] double v_logdet() const noexcept { return v_logdet_; }

private:
  TreeShape shape_;
  Hyperparams hyper_;
  Eigen::MatrixXd data_;
  Executor exec_;
  std::vector<Eigen::MatrixXd> w_inv_;
  std::vector<double> w_logdet_;
  Eigen::MatrixXd v_inv_;
  double v_logdet_ = 0.0;
};

/// Parameters of every variational factor.
struct VariationalState {
  // q(pi_s) = Dir(alpha_hat_s), inner nodes
  std::vector<Eigen::VectorXd> alpha_hat;
  // q(g_s) = Beta(a_hat_s, b_hat_s), inner nodes
  Eigen::VectorXd a_hat;
  Eigen::VectorXd b_hat;
  // q(mu_s) = N(m_hat_s, L_hat_s^{-1})
  std::vector<Eigen::VectorXd> m_hat;
  std::vector<Eigen::MatrixXd> L_hat;
  // q(Lambda_s) = W(nu_hat_s, W_hat_s)
  Eigen::VectorXd nu_hat;
  std::vector<Eigen::MatrixXd> W_hat;
  // q(L) = W(u_hat, V_hat)
  double u_hat = 0.0;
  Eigen::MatrixXd V_hat;

  /// pi_hat_{i, pa(s), s} stored in column s; column 0 (root) is 1.
  PointNodeMatrix edge_prob;
  /// g_hat_{i, s}; 0 on leaves of the full tree.
  PointNodeMatrix g_hat;

  [[nodiscard]] std::size_t points() const noexcept {
    return static_cast<std::size_t>(edge_prob.rows());
  }
};

/// Quantities derived from a VariationalState that the updates share.
struct SweepCache {
  PointNodeMatrix reach;      ///< q(s <= s(z_i))
  PointNodeMatrix leaf_prob;  ///< q(s in L(T_i))
  PointNodeMatrix inner_prob; ///< q(s in I(T_i))
  PointNodeMatrix exp_loglik; ///< E_q[ln N(x_i | mu_s, Lambda_s^{-1})]
  PointNodeMatrix ln_phi;
  PointNodeMatrix ln_zeta;
  PointNodeMatrix ln_rho;
  PointNodeMatrix ln_xi;      ///< column c holds ln xi_{i, pa(c), c}
  Eigen::VectorXd ln_g;       ///< E ln g_s; -inf on leaves
  Eigen::VectorXd ln_gc;      ///< E ln(1 - g_s); 0 on leaves
  Eigen::VectorXd elog_pi;    ///< column c holds E ln pi_{pa(c), c}; root 0
};

/// Responsibility-weighted statistics. Moments are kept as weighted sums so
/// nothing is divided by a possibly vanishing leaf mass.
struct SufficientStats {
  Eigen::VectorXd reach_mass;  ///< N_s
  Eigen::VectorXd leaf_mass;   ///< N~_s
  Eigen::VectorXd inner_count; ///< sum_i q(s in I(T_i))
  Eigen::VectorXd leaf_count;  ///< sum_i q(s in L(T_i))
  std::vector<Eigen::VectorXd> weighted_sum;   ///< N~_s * xbar_s
  std::vector<Eigen::MatrixXd> weighted_outer; ///< sum_i w_is x_i x_i^T

  /// N~_s * S_s, the weighted scatter around `center`.
  [[nodiscard]] Eigen::MatrixXd scatter(NodeId s,
                                        const Eigen::VectorXd &center) const;
};

/// Deterministic part of the initialization; m_hat is set to the root mean
/// everywhere. Works for n = 0.
[[nodiscard]] VariationalState prior_state(const Problem &problem);

/// Initialization with m_hat at the root equal to the data mean and every
/// other m_hat drawn around its parent's. Throws DomainError if n = 0.
[[nodiscard]] VariationalState init_state(const Problem &problem,
                                          std::uint64_t seed);

/// A cache consistent with `state`: reach, tree marginals, global
/// expectations, and expected log-likelihoods.
[[nodiscard]] SweepCache make_cache(const Problem &problem,
                                    const VariationalState &state);

/// reach from edge_prob.
void refresh_reach(const Problem &problem, const VariationalState &state,
                   SweepCache &cache);
/// leaf_prob and inner_prob from g_hat.
void refresh_tree_marginals(const Problem &problem,
                            const VariationalState &state, SweepCache &cache);
/// ln_g, ln_gc, elog_pi from the Dirichlet and Beta factors.
void refresh_global_expectations(const Problem &problem,
                                 const VariationalState &state,
                                 SweepCache &cache);
/// exp_loglik from the mean and precision factors.
void refresh_expected_loglik(const Problem &problem,
                             const VariationalState &state, SweepCache &cache);

} // namespace tssb::vb
