#pragma once

#include "tssb/vb_state.hpp"

namespace tssb::vb {

/// ln phi = reach * exp_loglik and ln zeta = leaf_prob * exp_loglik.
void compute_phi_zeta(const Problem &problem, SweepCache &cache);

/// q(z_i) for every point: bottom-up ln xi recursion, normalized into
/// edge_prob, then reach. Needs ln_zeta and elog_pi.
void update_q_z(const Problem &problem, VariationalState &state,
                SweepCache &cache);

/// q(T_i) for every point: bottom-up ln rho recursion, g_hat, then the tree
/// marginals. Needs ln_phi, ln_g and ln_gc.
void update_q_T(const Problem &problem, VariationalState &state,
                SweepCache &cache);

[[nodiscard]] SufficientStats accumulate_stats(const Problem &problem,
                                               const SweepCache &cache);

/// alpha_hat_{s,ch} = alpha_{s,ch} + N_ch
void update_q_pi(const Problem &problem, VariationalState &state,
                 const SufficientStats &stats);

/// a_hat = a + sum_i q(s in I(T_i)), b_hat = b + sum_i q(s in L(T_i))
void update_q_g(const Problem &problem, VariationalState &state,
                const SufficientStats &stats);

/// q(mu_s) for every node, breadth-first so each node sees its parent's
/// fresh mean. Uses the current q(Lambda) and q(L).
void update_q_mu(const Problem &problem, VariationalState &state,
                 const SufficientStats &stats);

/// q(Lambda_s) for every node, scatter centered at the current m_hat_s.
void update_q_lambda(const Problem &problem, VariationalState &state,
                     const SufficientStats &stats);

/// q(L) from the chain of mean factors.
void update_q_L(const Problem &problem, VariationalState &state);

/// One coordinate-ascent sweep in the order z, T, pi, g, mu, Lambda, L.
/// Leaves the cache consistent with the returned state.
void sweep(const Problem &problem, VariationalState &state, SweepCache &cache);

/// q(S_i = s) = q(s in L(T_i)) q(s <= s(z_i)).
[[nodiscard]] Eigen::VectorXd node_posterior(const SweepCache &cache,
                                             std::size_t point);
/// Node with the largest posterior; ties go to the smallest id.
[[nodiscard]] NodeId map_node(const SweepCache &cache, std::size_t point);

} // namespace tssb::vb
