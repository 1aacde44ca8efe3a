#include "tssb/model.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"

#include <cmath>
#include <string>

namespace tssb {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok)
    throw DomainError(what);
}

bool exactly_symmetric(const Eigen::MatrixXd &m) {
  return m.rows() == m.cols() && m == m.transpose();
}

void require_spd(const Eigen::MatrixXd &m, int p, const std::string &name) {
  require(m.rows() == p && m.cols() == p,
          name + " must be " + std::to_string(p) + "x" + std::to_string(p));
  require(exactly_symmetric(m), name + " must be symmetric");
  require(is_positive_definite(m), name + " must be positive definite");
}

} // namespace

Hyperparams Hyperparams::uniform(const TreeShape &shape, int p, double a,
                                 double b, double alpha, double u,
                                 double v_scale, double nu, double w_scale) {
  const auto inner = shape.inner_count();
  const auto nodes = shape.node_count();
  Hyperparams h;
  h.alpha.assign(inner, Eigen::VectorXd::Constant(shape.branching(), alpha));
  h.a = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(inner), a);
  h.b = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(inner), b);
  h.nu = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(nodes), nu);
  h.W.assign(nodes, w_scale * Eigen::MatrixXd::Identity(p, p));
  h.u = u;
  h.V = v_scale * Eigen::MatrixXd::Identity(p, p);
  h.root_mean = Eigen::VectorXd::Zero(p);
  return h;
}

Hyperparams Hyperparams::toy(const TreeShape &shape, int p) {
  return uniform(shape, p, 3.0, 1.0, 0.5, 5.0, 0.1, 2.0, 0.2);
}

void Hyperparams::validate(const TreeShape &shape) const {
  const int p = dim();
  require(p >= 1, "dimension must be >= 1");
  require(root_mean.allFinite(), "root mean must be finite");
  const auto inner = shape.inner_count();
  const auto nodes = shape.node_count();
  require(alpha.size() == inner, "alpha needs one vector per inner node");
  require(static_cast<std::size_t>(a.size()) == inner &&
              static_cast<std::size_t>(b.size()) == inner,
          "a and b need one entry per inner node");
  for (std::size_t s = 0; s < inner; ++s) {
    const auto tag = " at node " + std::to_string(s);
    require(alpha[s].size() == shape.branching(),
            "alpha needs K entries" + tag);
    require((alpha[s].array() > 0.0).all() && alpha[s].allFinite(),
            "alpha must be positive" + tag);
    const auto i = static_cast<Eigen::Index>(s);
    require(a[i] > 0.0 && std::isfinite(a[i]), "a must be positive" + tag);
    require(b[i] > 0.0 && std::isfinite(b[i]), "b must be positive" + tag);
  }
  require(static_cast<std::size_t>(nu.size()) == nodes && W.size() == nodes,
          "nu and W need one entry per node");
  for (std::size_t s = 0; s < nodes; ++s) {
    const auto tag = " at node " + std::to_string(s);
    require(nu[static_cast<Eigen::Index>(s)] > p - 1.0 &&
                std::isfinite(nu[static_cast<Eigen::Index>(s)]),
            "nu must exceed p - 1" + tag);
    require_spd(W[s], p, "W" + tag);
  }
  require(u > p - 1.0 && std::isfinite(u), "u must exceed p - 1");
  require_spd(V, p, "V");
}

void ModelParams::validate() const {
  const int p = dim();
  require(p >= 1, "dimension must be >= 1");
  require(routing.size() == shape.inner_count(),
          "routing needs one simplex per inner node");
  for (std::size_t s = 0; s < routing.size(); ++s) {
    const auto tag = " at node " + std::to_string(s);
    require(routing[s].size() == shape.branching(),
            "routing needs K entries" + tag);
    require((routing[s].array() >= 0.0).all(),
            "routing must be nonnegative" + tag);
    require(std::abs(routing[s].sum() - 1.0) <= 1e-12,
            "routing must sum to 1" + tag);
  }
  require(static_cast<std::size_t>(spread.size()) == shape.node_count(),
          "spread needs one entry per node");
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const double g = spread[static_cast<Eigen::Index>(s)];
    require(g >= 0.0 && g <= 1.0,
            "spread must lie in [0,1] at node " + std::to_string(s));
    if (shape.is_leaf(s))
      require(g == 0.0, "spread must be 0 at leaf " + std::to_string(s));
  }
  require(mean.size() == shape.node_count() &&
              precision.size() == shape.node_count(),
          "mean and precision need one entry per node");
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    require(mean[s].size() == p && mean[s].allFinite(),
            "mean must be a finite p-vector at node " + std::to_string(s));
    require_spd(precision[s], p, "precision at node " + std::to_string(s));
  }
  require_spd(chain_precision, p, "chain precision");
}

} // namespace tssb
