#pragma once

#include "tssb/tree.hpp"
#include "tssb/vb_state.hpp"

#include <Eigen/Core>

#include <vector>

namespace tssb::vb {

/// Exact q(T_i) by listing every full subtree.
struct TreePosterior {
  std::vector<FullSubtree> trees;
  std::vector<double> prob; ///< normalized, same order as `trees`
  double log_z = 0.0;       ///< ln of the normalizer
};

/// prod_{s in I(T)} g~_s prod_{s in L(T)} g~c_s phi_s, normalized over every
/// full subtree. Needs ln_g, ln_gc and ln_phi for point `i`.
/// Throws CapacityError past `cap` subtrees.
[[nodiscard]] TreePosterior
bruteforce_q_T(const Problem &problem, const SweepCache &cache, std::size_t i,
               std::size_t cap = kDefaultEnumerationCap);

/// prod_{s in I(T)} g_hat_s prod_{s in L(T)} (1 - g_hat_s) for point `i`.
[[nodiscard]] double parametric_q_T(const VariationalState &state,
                                    std::size_t i, const FullSubtree &tree);

} // namespace tssb::vb
