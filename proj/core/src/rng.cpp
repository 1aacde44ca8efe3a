#include "tssb/rng.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace tssb {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(Seed seed) : seed_(seed), engine_(mix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(seed_ ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>()(engine_); }

double Rng::gamma(double shape) {
  if (!(shape > 0.0))
    throw DomainError("gamma shape must be positive");
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

double Rng::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("beta parameters must be positive");
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

Eigen::VectorXd Rng::dirichlet(const Eigen::VectorXd &alpha) {
  Eigen::VectorXd out(alpha.size());
  for (Eigen::Index k = 0; k < alpha.size(); ++k)
    out[k] = gamma(alpha[k]);
  const double total = out.sum();
  if (!(total > 0.0)) {
    // Every gamma draw underflowed; fall back to the largest concentration.
    out.setZero();
    Eigen::Index arg = 0;
    alpha.maxCoeff(&arg);
    out[arg] = 1.0;
    return out;
  }
  return out / total;
}

int Rng::categorical(const Eigen::VectorXd &weights) {
  const double total = weights.sum();
  double u = uniform() * total;
  for (Eigen::Index k = 0; k + 1 < weights.size(); ++k) {
    if (u < weights[k])
      return static_cast<int>(k);
    u -= weights[k];
  }
  return static_cast<int>(weights.size() - 1);
}

Eigen::MatrixXd Rng::wishart(double dof, const Eigen::MatrixXd &scale) {
  const Eigen::Index p = scale.rows();
  if (!(dof > static_cast<double>(p) - 1.0))
    throw DomainError("Wishart degrees of freedom must exceed p - 1");
  const Eigen::MatrixXd chol = cholesky_lower(scale, "Wishart scale");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    // chi-square with dof - j degrees of freedom
    a(j, j) = std::sqrt(2.0 * gamma(0.5 * (dof - static_cast<double>(j))));
    for (Eigen::Index i = j + 1; i < p; ++i)
      a(i, j) = normal();
  }
  const Eigen::MatrixXd la = chol * a;
  return symmetrize(la * la.transpose());
}

Eigen::VectorXd
Rng::gaussian_from_precision_factor(const Eigen::VectorXd &mean,
                                    const Eigen::MatrixXd &precision_lower) {
  Eigen::VectorXd eps(mean.size());
  for (Eigen::Index j = 0; j < eps.size(); ++j)
    eps[j] = normal();
  // precision = L L^T, so L^{-T} eps has covariance precision^{-1}
  const Eigen::VectorXd offset =
      precision_lower.transpose().triangularView<Eigen::Upper>().solve(eps);
  return mean + offset;
}

} // namespace tssb
