#pragma once

#include "tssb/model.hpp"
#include "tssb/rng.hpp"
#include "tssb/tree.hpp"

#include <Eigen/Core>

#include <vector>

namespace tssb {

/// Draw ground-truth parameters from the priors. g_s is fixed to 0 on leaves;
/// mu is drawn root to leaves around the parent's mean.
[[nodiscard]] ModelParams sample_parameters(const TreeShape &shape,
                                            const Hyperparams &hyper,
                                            Seed seed);

/// Root-to-leaf routing path, one child index per level.
[[nodiscard]] std::vector<int> sample_path(const ModelParams &params, Rng &rng);
[[nodiscard]] std::vector<int> sample_path(const ModelParams &params,
                                           Seed seed);

/// Top-down subtree draw: each included node splits with probability g_s.
[[nodiscard]] FullSubtree sample_subtree(const ModelParams &params, Rng &rng);
[[nodiscard]] FullSubtree sample_subtree(const ModelParams &params, Seed seed);

/// prod_{s in I(T)} g_s * prod_{s in L(T)} (1 - g_s)
[[nodiscard]] double subtree_prior_prob(const FullSubtree &tree,
                                        const ModelParams &params);

/// The unique leaf of `tree` lying on `path`.
[[nodiscard]] NodeId resolve_node(const TreeShape &shape,
                                  const FullSubtree &tree,
                                  const std::vector<int> &path);

[[nodiscard]] Eigen::VectorXd sample_datapoint(const ModelParams &params,
                                               NodeId s, Rng &rng);
[[nodiscard]] Eigen::VectorXd sample_datapoint(const ModelParams &params,
                                               NodeId s, Seed seed);

/// Closed-form Pr{S = s} for every node (truncated TS-SBP marginal).
[[nodiscard]] Eigen::VectorXd node_marginal(const ModelParams &params);

/// Same marginal by summing over every subtree and every path.
[[nodiscard]] Eigen::VectorXd
node_marginal_bruteforce(const ModelParams &params,
                         std::size_t cap = kDefaultEnumerationCap);

struct GeneratedData {
  Eigen::MatrixXd points;    ///< n x p
  std::vector<int> labels;   ///< generating node or component per row
};

/// n i.i.d. draws of (subtree, path, point); label = resolved node id.
[[nodiscard]] GeneratedData sample_dataset(const ModelParams &params,
                                           std::size_t n, Seed seed);

/// Means of the seven-component planar mixture used for the toy experiment.
[[nodiscard]] std::vector<Eigen::Vector2d> toy_component_means();

/// Uniformly mixed, identity-covariance draws around toy_component_means();
/// label = component index 0..6.
[[nodiscard]] GeneratedData sample_toy_dataset(std::size_t n, Seed seed);

} // namespace tssb
