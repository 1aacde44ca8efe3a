#pragma once

#include "tssb/vb_state.hpp"

#include <Eigen/Core>

namespace tssb::testing {

/// Digamma from Binet's second integral, by double-exponential quadrature.
/// Shares no code with the library's special functions.
double digamma_by_integral(double x);

/// E[ln g] for g ~ Beta(a, b) by quadrature of ln t against the density.
double expected_log_beta_by_integral(double a, double b);

/// q(s <= s(z_i)) by listing all K^D root-to-leaf paths, each weighted by
/// exp(sum over its non-root nodes of E ln pi + ln zeta).
Eigen::VectorXd path_enumeration_reach(const vb::Problem &problem,
                                       const vb::SweepCache &cache,
                                       std::size_t i);

} // namespace tssb::testing
