#include "tssb/generative.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"

#include <string>

namespace tssb {

ModelParams sample_parameters(const TreeShape &shape, const Hyperparams &hyper,
                              Seed seed) {
  hyper.validate(shape);
  const int p = hyper.dim();
  Rng routing_rng = Rng(seed).split(1);
  Rng spread_rng = Rng(seed).split(2);
  Rng wishart_rng = Rng(seed).split(3);
  Rng mean_rng = Rng(seed).split(4);

  ModelParams params(shape);
  params.routing.reserve(shape.inner_count());
  for (NodeId s = 0; s < shape.inner_count(); ++s)
    params.routing.push_back(routing_rng.dirichlet(hyper.alpha[s]));

  params.spread = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(shape.node_count()));
  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    const auto i = static_cast<Eigen::Index>(s);
    params.spread[i] = spread_rng.beta(hyper.a[i], hyper.b[i]);
  }

  params.chain_precision = wishart_rng.wishart(hyper.u, hyper.V);
  params.precision.reserve(shape.node_count());
  for (NodeId s = 0; s < shape.node_count(); ++s)
    params.precision.push_back(wishart_rng.wishart(
        hyper.nu[static_cast<Eigen::Index>(s)], hyper.W[s]));

  const Eigen::MatrixXd chain_factor =
      cholesky_lower(params.chain_precision, "chain precision");
  params.mean.resize(shape.node_count(), Eigen::VectorXd::Zero(p));
  params.mean[0] =
      mean_rng.gaussian_from_precision_factor(hyper.root_mean, chain_factor);
  for (NodeId s = 1; s < shape.node_count(); ++s)
    params.mean[s] = mean_rng.gaussian_from_precision_factor(
        params.mean[shape.parent(s)], chain_factor);
  return params;
}

std::vector<int> sample_path(const ModelParams &params, Rng &rng) {
  const auto &shape = params.shape;
  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(shape.depth()));
  NodeId s = TreeShape::root();
  while (shape.is_inner(s)) {
    const int z = rng.categorical(params.routing[s]);
    path.push_back(z);
    s = shape.child(s, z);
  }
  return path;
}

std::vector<int> sample_path(const ModelParams &params, Seed seed) {
  Rng rng(seed);
  return sample_path(params, rng);
}

FullSubtree sample_subtree(const ModelParams &params, Rng &rng) {
  const auto &shape = params.shape;
  FullSubtree tree(shape);
  // Breadth-first ids visit parents before children.
  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    if (!tree.contains(s))
      continue;
    if (rng.uniform() < params.spread[static_cast<Eigen::Index>(s)])
      tree.expand(s);
  }
  return tree;
}

FullSubtree sample_subtree(const ModelParams &params, Seed seed) {
  Rng rng(seed);
  return sample_subtree(params, rng);
}

double subtree_prior_prob(const FullSubtree &tree, const ModelParams &params) {
  const auto &shape = params.shape;
  if (!is_full_subtree(shape, tree.members()))
    throw DomainError("not a full subtree of the parameter shape");
  double prob = 1.0;
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const double g = params.spread[static_cast<Eigen::Index>(s)];
    if (tree.is_inner(s))
      prob *= g;
    else if (tree.is_leaf(s))
      prob *= 1.0 - g;
  }
  return prob;
}

NodeId resolve_node(const TreeShape &shape, const FullSubtree &tree,
                    const std::vector<int> &path) {
  NodeId s = TreeShape::root();
  std::size_t level = 0;
  while (tree.is_inner(s)) {
    if (level >= path.size())
      throw DomainError("path shorter than the subtree depth");
    s = shape.child(s, path[level++]);
  }
  return s;
}

Eigen::VectorXd sample_datapoint(const ModelParams &params, NodeId s,
                                 Rng &rng) {
  if (!params.shape.valid(s))
    throw DomainError("node id " + std::to_string(s) + " out of range");
  const Eigen::MatrixXd factor =
      cholesky_lower(params.precision[s], "node precision");
  return rng.gaussian_from_precision_factor(params.mean[s], factor);
}

Eigen::VectorXd sample_datapoint(const ModelParams &params, NodeId s,
                                 Seed seed) {
  Rng rng(seed);
  return sample_datapoint(params, s, rng);
}

Eigen::VectorXd node_marginal(const ModelParams &params) {
  const auto &shape = params.shape;
  // reach_s = prod over the path of pi * g for strict ancestors, accumulated
  // top-down; the marginal stops the stick at s with 1 - g_s.
  Eigen::VectorXd reach(static_cast<Eigen::Index>(shape.node_count()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(shape.node_count()));
  reach[0] = 1.0;
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto i = static_cast<Eigen::Index>(s);
    if (s != TreeShape::root()) {
      const NodeId pa = shape.parent(s);
      reach[i] = reach[static_cast<Eigen::Index>(pa)] *
                 params.spread[static_cast<Eigen::Index>(pa)] *
                 params.routing[pa][shape.child_index(s)];
    }
    out[i] = reach[i] * (1.0 - params.spread[i]);
  }
  return out;
}

Eigen::VectorXd node_marginal_bruteforce(const ModelParams &params,
                                         std::size_t cap) {
  const auto &shape = params.shape;
  const auto trees = enumerate_subtrees(shape, cap);
  const auto paths = enumerate_paths(shape, cap);
  if (trees.size() > cap / paths.size())
    throw CapacityError("subtree x path count exceeds enumeration cap of " +
                            std::to_string(cap),
                        cap);

  std::vector<double> path_probs;
  path_probs.reserve(paths.size());
  for (const auto &z : paths) {
    double pz = 1.0;
    NodeId s = TreeShape::root();
    for (int k : z) {
      pz *= params.routing[s][k];
      s = shape.child(s, k);
    }
    path_probs.push_back(pz);
  }

  Eigen::VectorXd out =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.node_count()));
  for (const auto &tree : trees) {
    const double pt = subtree_prior_prob(tree, params);
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const NodeId leaf = shape.leaf_for_path(paths[j]);
      for (NodeId s = 0; s < shape.node_count(); ++s) {
        if (tree.is_leaf(s) && shape.is_ancestor_or_self(s, leaf))
          out[static_cast<Eigen::Index>(s)] += pt * path_probs[j];
      }
    }
  }
  return out;
}

GeneratedData sample_dataset(const ModelParams &params, std::size_t n,
                             Seed seed) {
  params.validate();
  Rng rng(seed);
  GeneratedData out;
  out.points.resize(static_cast<Eigen::Index>(n), params.dim());
  out.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FullSubtree tree = sample_subtree(params, rng);
    const auto path = sample_path(params, rng);
    const NodeId s = resolve_node(params.shape, tree, path);
    out.points.row(static_cast<Eigen::Index>(i)) =
        sample_datapoint(params, s, rng).transpose();
    out.labels.push_back(static_cast<int>(s));
  }
  return out;
}

std::vector<Eigen::Vector2d> toy_component_means() {
  return {{-15.0, -5.0}, {-15.0, 5.0}, {-10.0, 0.0}, {0.0, 0.0},
          {10.0, 0.0},   {15.0, -5.0}, {15.0, 5.0}};
}

GeneratedData sample_toy_dataset(std::size_t n, Seed seed) {
  const auto means = toy_component_means();
  Rng rng(seed);
  GeneratedData out;
  out.points.resize(static_cast<Eigen::Index>(n), 2);
  out.labels.reserve(n);
  const Eigen::VectorXd mixing =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(means.size()), 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = rng.categorical(mixing);
    const auto row = static_cast<Eigen::Index>(i);
    out.points(row, 0) = means[static_cast<std::size_t>(c)].x() + rng.normal();
    out.points(row, 1) = means[static_cast<std::size_t>(c)].y() + rng.normal();
    out.labels.push_back(c);
  }
  return out;
}

} // namespace tssb
