#pragma once

#include "tssb/model.hpp"
#include "tssb/rng.hpp"
#include "tssb/tree.hpp"
#include "tssb/vb_state.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace tssb {

struct FitConfig {
  int K = 2;
  int D = 3;
  int iters = 400;
  int restarts = 100;
  Seed seed = 0;
  double tol = 1e-8; ///< relative ELBO change; 0 runs every iteration
  unsigned threads = 1;

  /// Throws DomainError on K < 2, D < 1, iters < 0, restarts < 1, tol < 0.
  void validate() const;
};

struct RestartRecord {
  bool ok = false;
  double final_elbo = 0.0;
  int iterations = 0;
  std::string error; ///< NumericError message when !ok
};

struct FitResult {
  TreeShape shape;
  Hyperparams hyper;
  FitConfig config;
  vb::VariationalState state; ///< selected restart
  std::vector<double> elbo_trace; ///< index 0 is the initial state
  int selected_restart = -1;
  std::vector<RestartRecord> restarts;
  std::vector<double> iteration_seconds; ///< selected restart, per sweep

  // Derived from `state` by summarize().
  vb::PointNodeMatrix node_posterior; ///< q(S_i = s), n x |S|
  std::vector<NodeId> map_nodes;
  Eigen::VectorXd leaf_mass; ///< N~_s

  explicit FitResult(const TreeShape &s) : shape(s) {}

  [[nodiscard]] std::size_t points() const noexcept {
    return static_cast<std::size_t>(state.edge_prob.rows());
  }
  [[nodiscard]] int dim() const noexcept { return hyper.dim(); }
};

/// Coordinate ascent from `config.restarts` random initializations.
/// Restart r is seeded by Rng(seed).split(r); the one with the largest
/// final ELBO wins (ties to the lower index). A restart that hits a
/// NumericError is recorded and skipped; if all fail, the last error is
/// rethrown with restart context.
[[nodiscard]] FitResult fit(const Eigen::MatrixXd &data,
                            const Hyperparams &hyper, const FitConfig &config);

/// Fills node_posterior, map_nodes and leaf_mass from result.state.
void summarize(FitResult &result);

/// Node posterior of a new point under the fitted global factors: the
/// local z and T updates alternated until the change is below 1e-13.
[[nodiscard]] Eigen::VectorXd local_posterior(const FitResult &result,
                                              const Eigen::VectorXd &x);

} // namespace tssb
