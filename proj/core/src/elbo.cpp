#include "tssb/elbo.hpp"

#include "tssb/errors.hpp"
#include "tssb/expectations.hpp"
#include "tssb/linalg.hpp"
#include "tssb/special.hpp"

#include <cmath>
#include <vector>

namespace tssb::vb {

namespace {

Eigen::Index idx(std::size_t s) { return static_cast<Eigen::Index>(s); }

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// E_q[ln W(X | prior_dof, prior_scale)] - E_q[ln W(X | dof, scale)] for
// X ~ W(dof, scale).
double wishart_neg_kl(double prior_dof, const Eigen::MatrixXd &prior_scale_inv,
                      double prior_logdet, double dof,
                      const Eigen::MatrixXd &scale) {
  const int p = static_cast<int>(scale.rows());
  const double logdet = log_det_spd(scale, "Wishart scale");
  const double e_logdet = multi_digamma(dof, p) + p * kLn2 + logdet;
  const double trace = prior_scale_inv.cwiseProduct(scale).sum();
  return -0.5 * prior_dof * prior_logdet + 0.5 * dof * logdet -
         0.5 * (prior_dof - dof) * p * kLn2 -
         log_multigamma(0.5 * prior_dof, p) + log_multigamma(0.5 * dof, p) +
         0.5 * (prior_dof - dof) * e_logdet - 0.5 * dof * trace +
         0.5 * dof * p;
}

} // namespace

ElboTerms elbo_terms(const Problem &problem, const VariationalState &state,
                     const SweepCache &cache) {
  const auto &shape = problem.shape();
  const auto &hyper = problem.hyper();
  const std::size_t n = problem.points();
  const std::size_t nodes = shape.node_count();
  const int p = problem.dim();
  ElboTerms terms;

  // Per-point blocks, reduced in index order.
  std::vector<double> lik(n), path(n), tree(n);
  problem.exec().for_each(n, [&](std::size_t pt) {
    const auto i = idx(pt);
    double l = 0.0, z = 0.0, t = 0.0;
    for (NodeId s = 0; s < nodes; ++s) {
      const auto c = idx(s);
      l += cache.leaf_prob(i, c) * cache.reach(i, c) * cache.exp_loglik(i, c);
      if (s != TreeShape::root())
        z += cache.reach(i, c) *
             (cache.elog_pi[c] - std::log(state.edge_prob(i, c)));
      if (shape.is_inner(s)) {
        const double g = state.g_hat(i, c);
        const double inner = cache.inner_prob(i, c);
        const double leaf = cache.leaf_prob(i, c);
        t += inner * cache.ln_g[c] - xlogy(inner, g);
        t += leaf * cache.ln_gc[c] - xlogy(leaf, 1.0 - g);
      }
    }
    lik[pt] = l;
    path[pt] = z;
    tree[pt] = t;
  });
  for (std::size_t pt = 0; pt < n; ++pt) {
    terms.likelihood += lik[pt];
    terms.path += path[pt];
    terms.tree += tree[pt];
  }

  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    const auto &prior = hyper.alpha[s];
    const auto &post = state.alpha_hat[s];
    double r = log_gamma(prior.sum()) - log_gamma(post.sum());
    const NodeId first = shape.first_child(s);
    for (int k = 0; k < shape.branching(); ++k) {
      r += log_gamma(post[k]) - log_gamma(prior[k]);
      r += (prior[k] - post[k]) *
           cache.elog_pi[idx(first + static_cast<std::size_t>(k))];
    }
    terms.routing += r;

    const auto c = idx(s);
    terms.spread += log_beta(state.a_hat[c], state.b_hat[c]) -
                    log_beta(hyper.a[c], hyper.b[c]) +
                    (hyper.a[c] - state.a_hat[c]) * cache.ln_g[c] +
                    (hyper.b[c] - state.b_hat[c]) * cache.ln_gc[c];
  }

  for (NodeId s = 0; s < nodes; ++s)
    terms.node_precision +=
        wishart_neg_kl(hyper.nu[idx(s)], problem.w_inv(s),
                       problem.w_logdet(s), state.nu_hat[idx(s)],
                       state.W_hat[s]);
  terms.chain_precision += wishart_neg_kl(
      hyper.u, problem.v_inv(), problem.v_logdet(), state.u_hat, state.V_hat);

  // Mean chain: E ln N(mu_s | mu_pa, L^{-1}) plus the entropy of q(mu_s).
  const Eigen::MatrixXd chain = state.u_hat * state.V_hat;
  const double e_logdet_chain =
      expected_log_det_wishart(state.u_hat, state.V_hat);
  std::vector<Eigen::MatrixXd> mean_cov;
  mean_cov.reserve(nodes);
  for (NodeId s = 0; s < nodes; ++s)
    mean_cov.push_back(spd_inverse(state.L_hat[s], "L_hat"));
  for (NodeId s = 0; s < nodes; ++s) {
    Eigen::MatrixXd second;
    if (s == TreeShape::root()) {
      const Eigen::VectorXd gap = state.m_hat[s] - hyper.root_mean;
      second = mean_cov[s] + gap * gap.transpose();
    } else {
      const NodeId pa = shape.parent(s);
      const Eigen::VectorXd gap = state.m_hat[s] - state.m_hat[pa];
      second = mean_cov[s] + mean_cov[pa] + gap * gap.transpose();
    }
    terms.mean += -0.5 * p * kLn2Pi + 0.5 * e_logdet_chain -
                  0.5 * chain.cwiseProduct(second).sum();
    terms.mean += 0.5 * p * (1.0 + kLn2Pi) -
                  0.5 * log_det_spd(state.L_hat[s], "L_hat");
  }

  if (!std::isfinite(terms.total()))
    throw NumericError("variational lower bound is not finite");
  return terms;
}

double elbo(const Problem &problem, const VariationalState &state,
            const SweepCache &cache) {
  return elbo_terms(problem, state, cache).total();
}

} // namespace tssb::vb
