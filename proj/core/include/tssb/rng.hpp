#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace tssb {

using Seed = std::uint64_t;

/// Seedable, splittable pseudo-random generator.
///
/// Streams derived with split() are independent of the parent's draw
/// position, so results depend only on (seed, stream path).
class Rng {
public:
  explicit Rng(Seed seed);

  [[nodiscard]] Seed seed() const noexcept { return seed_; }
  [[nodiscard]] Rng split(std::uint64_t stream) const;

  double uniform();
  double normal();
  double gamma(double shape);
  double beta(double a, double b);
  Eigen::VectorXd dirichlet(const Eigen::VectorXd &alpha);
  /// Index drawn proportionally to `weights` (need not be normalized).
  int categorical(const Eigen::VectorXd &weights);

  /// Wishart(dof, scale) draw by the Bartlett decomposition; mean dof*scale.
  Eigen::MatrixXd wishart(double dof, const Eigen::MatrixXd &scale);
  /// Gaussian draw given the mean and the lower Cholesky factor of the
  /// precision matrix.
  Eigen::VectorXd gaussian_from_precision_factor(
      const Eigen::VectorXd &mean, const Eigen::MatrixXd &precision_lower);

  std::mt19937_64 &engine() noexcept { return engine_; }

private:
  Seed seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive stream seeds.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace tssb
