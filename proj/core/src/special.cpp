#include "tssb/special.hpp"

#include "tssb/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tssb {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("digamma argument must be positive and finite");
  return boost::math::digamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log-gamma argument must be positive and finite");
  return boost::math::lgamma(x);
}

double log_multigamma(double x, int p) {
  double out = 0.25 * p * (p - 1) * kLnPi;
  for (int j = 1; j <= p; ++j)
    out += log_gamma(x + 0.5 * (1 - j));
  return out;
}

double multi_digamma(double dof, int p) {
  double out = 0.0;
  for (int j = 1; j <= p; ++j)
    out += digamma(0.5 * (dof + 1.0 - j));
  return out;
}

double logsumexp(double a, double b) noexcept {
  const double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity())
    return hi;
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double logsumexp(std::span<const double> values) noexcept {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values)
    hi = std::max(hi, v);
  if (hi == -std::numeric_limits<double>::infinity())
    return hi;
  double acc = 0.0;
  for (double v : values)
    acc += std::exp(v - hi);
  return hi + std::log(acc);
}

double xlogy(double x, double y) noexcept {
  if (x == 0.0)
    return 0.0;
  return x * std::log(y);
}

} // namespace tssb
