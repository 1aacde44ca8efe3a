#pragma once

#include <span>

namespace tssb {

/// Digamma function psi(x) for x > 0.
[[nodiscard]] double digamma(double x);
/// ln Gamma(x) for x > 0.
[[nodiscard]] double log_gamma(double x);
/// Multivariate log-gamma: ln Gamma_p(x).
[[nodiscard]] double log_multigamma(double x, int p);
/// sum_{j=1}^{p} psi((dof + 1 - j) / 2)
[[nodiscard]] double multi_digamma(double dof, int p);

/// ln(exp(a) + exp(b)) without overflow; -inf inputs are handled.
[[nodiscard]] double logsumexp(double a, double b) noexcept;
[[nodiscard]] double logsumexp(std::span<const double> values) noexcept;

/// x * ln(y) with the convention 0 * ln(0) = 0.
[[nodiscard]] double xlogy(double x, double y) noexcept;

inline constexpr double kLn2Pi = 1.8378770664093454835606594728112;
inline constexpr double kLnPi = 1.1447298858494001741434273513531;
inline constexpr double kLn2 = 0.69314718055994530941723212145818;

} // namespace tssb
