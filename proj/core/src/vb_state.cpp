#include "tssb/vb_state.hpp"

#include "tssb/errors.hpp"
#include "tssb/expectations.hpp"
#include "tssb/linalg.hpp"
#include "tssb/rng.hpp"

#include <Eigen/Dense>

#include <limits>
#include <string>

namespace tssb::vb {

Problem::Problem(TreeShape shape, Hyperparams hyper, Eigen::MatrixXd data,
                 Executor exec)
    : shape_(std::move(shape)), hyper_(std::move(hyper)),
      data_(std::move(data)), exec_(exec) {
  hyper_.validate(shape_);
  if (data_.cols() != hyper_.dim())
    throw DomainError("data has " + std::to_string(data_.cols()) +
                      " columns but the hyperparameters have dimension " +
                      std::to_string(hyper_.dim()));
  if (!data_.allFinite())
    throw DomainError("data contains non-finite values");
  w_inv_.reserve(shape_.node_count());
  w_logdet_.reserve(shape_.node_count());
  for (NodeId s = 0; s < shape_.node_count(); ++s) {
    w_inv_.push_back(spd_inverse(hyper_.W[s], "W"));
    w_logdet_.push_back(log_det_spd(hyper_.W[s], "W"));
  }
  v_inv_ = spd_inverse(hyper_.V, "V");
  v_logdet_ = log_det_spd(hyper_.V, "V");
}

Eigen::MatrixXd SufficientStats::scatter(NodeId s,
                                         const Eigen::VectorXd &center) const {
  const Eigen::VectorXd &first = weighted_sum[s];
  const double mass = leaf_mass[static_cast<Eigen::Index>(s)];
  const Eigen::MatrixXd out = weighted_outer[s] - center * first.transpose() -
                              first * center.transpose() +
                              mass * center * center.transpose();
  return symmetrize(out);
}

VariationalState prior_state(const Problem &problem) {
  const auto &shape = problem.shape();
  const auto &hyper = problem.hyper();
  const auto n = static_cast<Eigen::Index>(problem.points());
  const auto nodes = static_cast<Eigen::Index>(shape.node_count());

  VariationalState state;
  state.alpha_hat = hyper.alpha;
  state.a_hat = hyper.a;
  state.b_hat = hyper.b;
  state.m_hat.assign(shape.node_count(), hyper.root_mean);
  state.L_hat.assign(shape.node_count(), hyper.u * hyper.V);
  state.nu_hat = hyper.nu;
  state.W_hat = hyper.W;
  state.u_hat = hyper.u;
  state.V_hat = hyper.V;

  state.edge_prob =
      PointNodeMatrix::Constant(n, nodes, 1.0 / shape.branching());
  if (n > 0)
    state.edge_prob.col(0).setOnes();
  state.g_hat = PointNodeMatrix::Zero(n, nodes);
  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    const auto i = static_cast<Eigen::Index>(s);
    state.g_hat.col(i).setConstant(hyper.a[i] / (hyper.a[i] + hyper.b[i]));
  }
  return state;
}

VariationalState init_state(const Problem &problem, std::uint64_t seed) {
  if (problem.points() == 0)
    throw DomainError("cannot initialize from an empty dataset");
  const auto &shape = problem.shape();
  const auto &hyper = problem.hyper();
  VariationalState state = prior_state(problem);

  state.m_hat[0] = problem.data().colwise().mean().transpose();
  Rng rng(seed);
  const Eigen::MatrixXd factor =
      cholesky_lower(hyper.u * hyper.V, "u * V");
  for (NodeId s = 1; s < shape.node_count(); ++s)
    state.m_hat[s] =
        rng.gaussian_from_precision_factor(state.m_hat[shape.parent(s)], factor);
  return state;
}

void refresh_reach(const Problem &problem, const VariationalState &state,
                   SweepCache &cache) {
  const auto &shape = problem.shape();
  const auto n = problem.points();
  const auto nodes = static_cast<Eigen::Index>(shape.node_count());
  cache.reach.resize(static_cast<Eigen::Index>(n), nodes);
  problem.exec().for_each(n, [&](std::size_t pt) {
    const auto i = static_cast<Eigen::Index>(pt);
    cache.reach(i, 0) = 1.0;
    for (NodeId s = 1; s < shape.node_count(); ++s) {
      const auto c = static_cast<Eigen::Index>(s);
      cache.reach(i, c) =
          cache.reach(i, static_cast<Eigen::Index>(shape.parent(s))) *
          state.edge_prob(i, c);
    }
  });
}

void refresh_tree_marginals(const Problem &problem,
                            const VariationalState &state, SweepCache &cache) {
  const auto &shape = problem.shape();
  const auto n = problem.points();
  const auto nodes = static_cast<Eigen::Index>(shape.node_count());
  cache.leaf_prob.resize(static_cast<Eigen::Index>(n), nodes);
  cache.inner_prob.resize(static_cast<Eigen::Index>(n), nodes);
  problem.exec().for_each(n, [&](std::size_t pt) {
    const auto i = static_cast<Eigen::Index>(pt);
    for (NodeId s = 0; s < shape.node_count(); ++s) {
      const auto c = static_cast<Eigen::Index>(s);
      // probability that s belongs to T_i: product of ancestor g_hat
      const double present =
          s == TreeShape::root()
              ? 1.0
              : cache.inner_prob(i, static_cast<Eigen::Index>(shape.parent(s)));
      const double g = state.g_hat(i, c);
      cache.inner_prob(i, c) = present * g;
      cache.leaf_prob(i, c) = present * (1.0 - g);
    }
  });
}

void refresh_global_expectations(const Problem &problem,
                                 const VariationalState &state,
                                 SweepCache &cache) {
  const auto &shape = problem.shape();
  const auto nodes = static_cast<Eigen::Index>(shape.node_count());
  cache.ln_g.resize(nodes);
  cache.ln_gc.resize(nodes);
  cache.elog_pi.resize(nodes);
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    if (shape.is_inner(s)) {
      const auto e = expected_log_g(state.a_hat[c], state.b_hat[c]);
      cache.ln_g[c] = e.ln_g;
      cache.ln_gc[c] = e.ln_gc;
    } else {
      cache.ln_g[c] = -std::numeric_limits<double>::infinity();
      cache.ln_gc[c] = 0.0;
    }
    cache.elog_pi[c] =
        s == TreeShape::root()
            ? 0.0
            : expected_log_dirichlet_weight(state.alpha_hat[shape.parent(s)],
                                            shape.child_index(s));
  }
}

void refresh_expected_loglik(const Problem &problem,
                             const VariationalState &state,
                             SweepCache &cache) {
  const auto nodes = problem.nodes();
  cache.exp_loglik.resize(static_cast<Eigen::Index>(problem.points()),
                          static_cast<Eigen::Index>(nodes));
  if (problem.points() == 0)
    return;
  problem.exec().for_each(nodes, [&](std::size_t s) {
    GaussianTerm term;
    try {
      term = make_gaussian_term(state.m_hat[s], state.L_hat[s],
                                state.nu_hat[static_cast<Eigen::Index>(s)],
                                state.W_hat[s]);
    } catch (const NumericError &e) {
      throw NumericError(e.what(), NumericError::npos, s);
    }
    cache.exp_loglik.col(static_cast<Eigen::Index>(s)) =
        term.batch(problem.data());
  });
}

SweepCache make_cache(const Problem &problem, const VariationalState &state) {
  SweepCache cache;
  const auto n = static_cast<Eigen::Index>(problem.points());
  const auto nodes = static_cast<Eigen::Index>(problem.nodes());
  refresh_reach(problem, state, cache);
  refresh_tree_marginals(problem, state, cache);
  refresh_global_expectations(problem, state, cache);
  refresh_expected_loglik(problem, state, cache);
  cache.ln_phi = PointNodeMatrix::Zero(n, nodes);
  cache.ln_zeta = PointNodeMatrix::Zero(n, nodes);
  cache.ln_rho = PointNodeMatrix::Zero(n, nodes);
  cache.ln_xi = PointNodeMatrix::Zero(n, nodes);
  return cache;
}

} // namespace tssb::vb
