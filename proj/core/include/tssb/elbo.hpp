#pragma once

#include "tssb/vb_state.hpp"

namespace tssb::vb {

/// The variational lower bound split by factor. Each entry is
/// E_q[ln p(.)] - E_q[ln q(.)] for the named block, so the parameter blocks
/// are -KL(q || prior) except `mean`, whose prior couples nodes.
struct ElboTerms {
  double likelihood = 0.0; ///< E ln p(x | z, T, mu, Lambda)
  double path = 0.0;       ///< z given pi
  double tree = 0.0;       ///< T given g
  double routing = 0.0;    ///< pi
  double spread = 0.0;     ///< g
  double mean = 0.0;       ///< mu given L
  double node_precision = 0.0;  ///< Lambda
  double chain_precision = 0.0; ///< L

  [[nodiscard]] double total() const noexcept {
    return likelihood + path + tree + routing + spread + mean +
           node_precision + chain_precision;
  }
};

/// Evaluates every block from a cache consistent with `state`
/// (reach, tree marginals, global expectations, exp_loglik).
/// Throws NumericError if the result is not finite.
[[nodiscard]] ElboTerms elbo_terms(const Problem &problem,
                                   const VariationalState &state,
                                   const SweepCache &cache);

[[nodiscard]] double elbo(const Problem &problem, const VariationalState &state,
                          const SweepCache &cache);

} // namespace tssb::vb
