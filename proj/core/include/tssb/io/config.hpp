#pragma once

#include "tssb/fit.hpp"
#include "tssb/model.hpp"
#include "tssb/tree.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <optional>
#include <string>

namespace tssb::io {

/// base * depth_factor^{depth}; a constant when depth_factor is 1.
struct DepthScaled {
  double base = 1.0;
  double depth_factor = 1.0;

  [[nodiscard]] double at(int depth) const;
};

/// scale * I unless a full matrix is given.
struct MatrixSpec {
  double scale = 1.0;
  std::optional<Eigen::MatrixXd> full;

  [[nodiscard]] Eigen::MatrixXd at(int p) const;
};

/// Hyperparameters before the dimension and tree are fixed. Defaults are
/// the toy-experiment constants.
struct HyperSpec {
  DepthScaled a{3.0};
  DepthScaled b{1.0};
  DepthScaled nu{2.0};
  Eigen::VectorXd alpha = Eigen::VectorXd::Constant(1, 0.5); ///< 1 or K
  double u = 5.0;
  MatrixSpec V{0.1, std::nullopt};
  MatrixSpec W{0.2, std::nullopt};
  std::optional<Eigen::VectorXd> root_mean; ///< zero vector when unset
};

struct RunConfig {
  FitConfig fit;
  HyperSpec hyper;
  std::string generator = "toy"; ///< "toy" or "tssb", for `generate`
  std::optional<int> p;          ///< explicit dimension, if given

  [[nodiscard]] TreeShape shape() const { return TreeShape(fit.K, fit.D); }

  /// Explicit p, else one implied by a vector or matrix field, else 2.
  [[nodiscard]] int dimension() const;

  /// Concrete hyperparameters for dimension `p`. Throws ConfigError naming
  /// the field when a constraint fails (for example nu <= p - 1), or
  /// ConfigError("p") if `p` disagrees with an explicit or implied one.
  [[nodiscard]] Hyperparams materialize(int p) const;
};

/// Reads a JSON object. Missing keys take their defaults; unknown keys,
/// wrong types and domain violations throw ConfigError naming the field.
/// Throws IoError if the file cannot be read.
[[nodiscard]] RunConfig parse_config(const std::filesystem::path &path);
[[nodiscard]] RunConfig parse_config_text(const std::string &text);

} // namespace tssb::io
