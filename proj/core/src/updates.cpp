#include "tssb/updates.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"
#include "tssb/special.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tssb::vb {

namespace {

constexpr double kTinyProb = std::numeric_limits<double>::min();

Eigen::Index idx(std::size_t s) { return static_cast<Eigen::Index>(s); }

} // namespace

void compute_phi_zeta(const Problem &problem, SweepCache &cache) {
  (void)problem;
  cache.ln_phi = cache.reach.cwiseProduct(cache.exp_loglik);
  cache.ln_zeta = cache.leaf_prob.cwiseProduct(cache.exp_loglik);
}

void update_q_z(const Problem &problem, VariationalState &state,
                SweepCache &cache) {
  const auto &shape = problem.shape();
  const std::size_t nodes = shape.node_count();
  const auto k = static_cast<std::size_t>(shape.branching());
  cache.ln_xi.resize(idx(problem.points()), idx(nodes));

  problem.exec().for_blocks(problem.points(), [&](std::size_t begin,
                                                  std::size_t end) {
    // ln sum_{c in Ch(s)} xi_{i,s,c}, per inner node
    std::vector<double> child_lse(shape.inner_count());
    for (std::size_t pt = begin; pt < end; ++pt) {
      const auto i = idx(pt);
      auto xi = cache.ln_xi.row(i);
      for (NodeId c = nodes - 1; c >= 1; --c) {
        double v = cache.elog_pi[idx(c)] + cache.ln_zeta(i, idx(c));
        if (shape.is_inner(c)) {
          const NodeId first = shape.first_child(c);
          child_lse[c] = logsumexp(
              std::span<const double>(xi.data() + first, k));
          v += child_lse[c];
        }
        xi[idx(c)] = v;
      }
      child_lse[0] = logsumexp(std::span<const double>(xi.data() + 1, k));

      state.edge_prob(i, 0) = 1.0;
      for (NodeId c = 1; c < nodes; ++c) {
        const double lp = xi[idx(c)] - child_lse[shape.parent(c)];
        if (!std::isfinite(lp))
          throw NumericError("non-finite path log-probability", pt, c);
        state.edge_prob(i, idx(c)) = std::max(std::exp(lp), kTinyProb);
      }
    }
  });
  refresh_reach(problem, state, cache);
}

void update_q_T(const Problem &problem, VariationalState &state,
                SweepCache &cache) {
  const auto &shape = problem.shape();
  const std::size_t nodes = shape.node_count();
  cache.ln_rho.resize(idx(problem.points()), idx(nodes));

  problem.exec().for_each(problem.points(), [&](std::size_t pt) {
    const auto i = idx(pt);
    for (NodeId s = nodes; s-- > 0;) {
      const auto c = idx(s);
      if (shape.is_leaf(s)) {
        cache.ln_rho(i, c) = cache.ln_phi(i, c);
        state.g_hat(i, c) = 0.0;
        continue;
      }
      double split = cache.ln_g[c];
      const NodeId first = shape.first_child(s);
      for (int ch = 0; ch < shape.branching(); ++ch)
        split += cache.ln_rho(i, idx(first + static_cast<std::size_t>(ch)));
      const double stop = cache.ln_gc[c] + cache.ln_phi(i, c);
      const double rho = logsumexp(stop, split);
      if (!std::isfinite(rho))
        throw NumericError("non-finite ln rho", pt, s);
      cache.ln_rho(i, c) = rho;
      state.g_hat(i, c) = std::clamp(std::exp(split - rho), 0.0, 1.0);
    }
  });
  refresh_tree_marginals(problem, state, cache);
}

SufficientStats accumulate_stats(const Problem &problem,
                                 const SweepCache &cache) {
  const std::size_t nodes = problem.nodes();
  const int p = problem.dim();
  const auto &x = problem.data();
  SufficientStats stats;
  if (problem.points() == 0) {
    stats.reach_mass = Eigen::VectorXd::Zero(idx(nodes));
    stats.leaf_mass = Eigen::VectorXd::Zero(idx(nodes));
    stats.inner_count = Eigen::VectorXd::Zero(idx(nodes));
    stats.leaf_count = Eigen::VectorXd::Zero(idx(nodes));
    stats.weighted_sum.assign(nodes, Eigen::VectorXd::Zero(p));
    stats.weighted_outer.assign(nodes, Eigen::MatrixXd::Zero(p, p));
    return stats;
  }
  const PointNodeMatrix weights = cache.leaf_prob.cwiseProduct(cache.reach);
  stats.reach_mass = cache.reach.colwise().sum().transpose();
  stats.leaf_mass = weights.colwise().sum().transpose();
  stats.inner_count = cache.inner_prob.colwise().sum().transpose();
  stats.leaf_count = cache.leaf_prob.colwise().sum().transpose();

  const Eigen::MatrixXd first = weights.transpose() * x; // nodes x p
  stats.weighted_sum.resize(nodes);
  stats.weighted_outer.resize(nodes);
  problem.exec().for_each(nodes, [&](std::size_t s) {
    stats.weighted_sum[s] = first.row(idx(s)).transpose();
    const Eigen::MatrixXd scaled =
        x.array().colwise() * weights.col(idx(s)).array();
    stats.weighted_outer[s] = symmetrize(scaled.transpose() * x);
  });
  return stats;
}

void update_q_pi(const Problem &problem, VariationalState &state,
                 const SufficientStats &stats) {
  const auto &shape = problem.shape();
  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    const NodeId first = shape.first_child(s);
    for (int ch = 0; ch < shape.branching(); ++ch)
      state.alpha_hat[s][ch] =
          problem.hyper().alpha[s][ch] +
          stats.reach_mass[idx(first + static_cast<std::size_t>(ch))];
  }
}

void update_q_g(const Problem &problem, VariationalState &state,
                const SufficientStats &stats) {
  const auto &hyper = problem.hyper();
  for (NodeId s = 0; s < problem.shape().inner_count(); ++s) {
    const auto c = idx(s);
    state.a_hat[c] = hyper.a[c] + stats.inner_count[c];
    state.b_hat[c] = hyper.b[c] + stats.leaf_count[c];
  }
}

void update_q_mu(const Problem &problem, VariationalState &state,
                 const SufficientStats &stats) {
  const auto &shape = problem.shape();
  const auto &hyper = problem.hyper();
  const Eigen::MatrixXd chain = state.u_hat * state.V_hat; // E[L]
  const double k = shape.branching();
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto c = idx(s);
    const Eigen::MatrixXd node_prec = state.nu_hat[c] * state.W_hat[s];
    const double mass = stats.leaf_mass[c];
    const Eigen::VectorXd &parent_mean =
        s == TreeShape::root() ? hyper.root_mean : state.m_hat[shape.parent(s)];

    Eigen::VectorXd neighbours = parent_mean;
    double links = 1.0;
    if (shape.is_inner(s)) {
      const NodeId first = shape.first_child(s);
      for (int ch = 0; ch < shape.branching(); ++ch)
        neighbours += state.m_hat[first + static_cast<std::size_t>(ch)];
      links = k + 1.0;
    }
    const Eigen::MatrixXd precision = symmetrize(mass * node_prec + links * chain);
    const Eigen::VectorXd rhs =
        node_prec * stats.weighted_sum[s] + chain * neighbours;
    Eigen::LLT<Eigen::MatrixXd> llt(precision);
    if (llt.info() != Eigen::Success)
      throw NumericError("L_hat is not positive definite",
                         NumericError::npos, s);
    state.L_hat[s] = precision;
    state.m_hat[s] = llt.solve(rhs);
    if (!state.m_hat[s].allFinite())
      throw NumericError("non-finite m_hat", NumericError::npos, s);
  }
}

void update_q_lambda(const Problem &problem, VariationalState &state,
                     const SufficientStats &stats) {
  const auto &hyper = problem.hyper();
  for (NodeId s = 0; s < problem.nodes(); ++s) {
    const auto c = idx(s);
    const double mass = stats.leaf_mass[c];
    state.nu_hat[c] = hyper.nu[c] + mass;
    if (mass == 0.0) {
      state.W_hat[s] = hyper.W[s];
      continue;
    }
    const Eigen::MatrixXd mean_cov = spd_inverse(state.L_hat[s], "L_hat");
    const Eigen::MatrixXd w_inv = problem.w_inv(s) +
                                  stats.scatter(s, state.m_hat[s]) +
                                  mass * mean_cov;
    try {
      state.W_hat[s] = spd_inverse(w_inv, "W_hat^{-1}");
    } catch (const NumericError &e) {
      throw NumericError(e.what(), NumericError::npos, s);
    }
  }
}

void update_q_L(const Problem &problem, VariationalState &state) {
  const auto &shape = problem.shape();
  const auto &hyper = problem.hyper();
  std::vector<Eigen::MatrixXd> mean_cov;
  mean_cov.reserve(shape.node_count());
  for (NodeId s = 0; s < shape.node_count(); ++s)
    mean_cov.push_back(spd_inverse(state.L_hat[s], "L_hat"));

  Eigen::MatrixXd v_inv = problem.v_inv();
  const Eigen::VectorXd root_gap = state.m_hat[0] - hyper.root_mean;
  v_inv += mean_cov[0] + root_gap * root_gap.transpose();
  for (NodeId s = 1; s < shape.node_count(); ++s) {
    const NodeId pa = shape.parent(s);
    const Eigen::VectorXd gap = state.m_hat[s] - state.m_hat[pa];
    v_inv += mean_cov[s] + mean_cov[pa] + gap * gap.transpose();
  }
  state.u_hat = hyper.u + static_cast<double>(shape.node_count());
  state.V_hat = spd_inverse(symmetrize(v_inv), "V_hat^{-1}");
}

void sweep(const Problem &problem, VariationalState &state,
           SweepCache &cache) {
  compute_phi_zeta(problem, cache);
  update_q_z(problem, state, cache);
  compute_phi_zeta(problem, cache);
  update_q_T(problem, state, cache);

  const SufficientStats stats = accumulate_stats(problem, cache);
  update_q_pi(problem, state, stats);
  update_q_g(problem, state, stats);
  refresh_global_expectations(problem, state, cache);
  update_q_mu(problem, state, stats);
  update_q_lambda(problem, state, stats);
  update_q_L(problem, state);
  refresh_expected_loglik(problem, state, cache);
}

Eigen::VectorXd node_posterior(const SweepCache &cache, std::size_t point) {
  const auto i = idx(point);
  return cache.leaf_prob.row(i).cwiseProduct(cache.reach.row(i)).transpose();
}

NodeId map_node(const SweepCache &cache, std::size_t point) {
  const Eigen::VectorXd post = node_posterior(cache, point);
  NodeId best = 0;
  for (Eigen::Index s = 1; s < post.size(); ++s)
    if (post[s] > post[idx(best)])
      best = static_cast<NodeId>(s);
  return best;
}

} // namespace tssb::vb
