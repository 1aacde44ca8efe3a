#include "tssb/oracle.hpp"

#include "tssb/special.hpp"

#include <cmath>

namespace tssb::vb {

TreePosterior bruteforce_q_T(const Problem &problem, const SweepCache &cache,
                             std::size_t i, std::size_t cap) {
  const auto &shape = problem.shape();
  const auto row = static_cast<Eigen::Index>(i);
  TreePosterior out;
  out.trees = enumerate_subtrees(shape, cap);

  std::vector<double> logw;
  logw.reserve(out.trees.size());
  for (const auto &tree : out.trees) {
    double w = 0.0;
    for (NodeId s : tree.inner_nodes())
      w += cache.ln_g[static_cast<Eigen::Index>(s)];
    for (NodeId s : tree.leaf_nodes()) {
      const auto c = static_cast<Eigen::Index>(s);
      w += cache.ln_gc[c] + cache.ln_phi(row, c);
    }
    logw.push_back(w);
  }
  out.log_z = logsumexp(std::span<const double>(logw));
  out.prob.reserve(logw.size());
  for (double w : logw)
    out.prob.push_back(std::exp(w - out.log_z));
  return out;
}

double parametric_q_T(const VariationalState &state, std::size_t i,
                      const FullSubtree &tree) {
  const auto row = static_cast<Eigen::Index>(i);
  double q = 1.0;
  for (NodeId s : tree.inner_nodes())
    q *= state.g_hat(row, static_cast<Eigen::Index>(s));
  for (NodeId s : tree.leaf_nodes())
    q *= 1.0 - state.g_hat(row, static_cast<Eigen::Index>(s));
  return q;
}

} // namespace tssb::vb
