#include "tssb/fit.hpp"

#include "tssb/elbo.hpp"
#include "tssb/errors.hpp"
#include "tssb/updates.hpp"

#include <chrono>
#include <cmath>
#include <optional>

namespace tssb {

void FitConfig::validate() const {
  if (K < 2)
    throw DomainError("K must be at least 2");
  if (D < 1)
    throw DomainError("D must be at least 1");
  if (iters < 0)
    throw DomainError("iters must be non-negative");
  if (restarts < 1)
    throw DomainError("restarts must be at least 1");
  if (!(tol >= 0.0))
    throw DomainError("tol must be non-negative");
}

namespace {

struct Run {
  vb::VariationalState state;
  std::vector<double> trace;
  std::vector<double> seconds;
};

Run run_restart(const vb::Problem &problem, const FitConfig &config,
                Seed seed) {
  using clock = std::chrono::steady_clock;
  Run run;
  run.state = vb::init_state(problem, seed);
  vb::SweepCache cache = vb::make_cache(problem, run.state);
  run.trace.push_back(vb::elbo(problem, run.state, cache));
  for (int it = 0; it < config.iters; ++it) {
    const auto start = clock::now();
    vb::sweep(problem, run.state, cache);
    const double value = vb::elbo(problem, run.state, cache);
    run.seconds.push_back(
        std::chrono::duration<double>(clock::now() - start).count());
    const double previous = run.trace.back();
    run.trace.push_back(value);
    if (config.tol > 0.0 &&
        std::abs(value - previous) <= config.tol * std::abs(previous))
      break;
  }
  return run;
}

} // namespace

FitResult fit(const Eigen::MatrixXd &data, const Hyperparams &hyper,
              const FitConfig &config) {
  config.validate();
  const TreeShape shape(config.K, config.D);
  const vb::Problem problem(shape, hyper, data, Executor(config.threads));
  if (problem.points() == 0)
    throw DomainError("cannot fit an empty dataset");

  FitResult result(shape);
  result.hyper = hyper;
  result.config = config;
  const Rng root(config.seed);
  std::optional<Run> best;
  std::string last_error;
  for (int r = 0; r < config.restarts; ++r) {
    RestartRecord record;
    try {
      Run run = run_restart(problem, config,
                            root.split(static_cast<std::uint64_t>(r)).seed());
      record.ok = true;
      record.final_elbo = run.trace.back();
      record.iterations = static_cast<int>(run.trace.size()) - 1;
      if (!best || record.final_elbo > best->trace.back()) {
        best = std::move(run);
        result.selected_restart = r;
      }
    } catch (const NumericError &e) {
      record.error = e.what();
      last_error = "restart " + std::to_string(r) + ": " + e.what();
    }
    result.restarts.push_back(std::move(record));
  }
  if (!best)
    throw NumericError("all restarts failed; " + last_error);

  result.state = std::move(best->state);
  result.elbo_trace = std::move(best->trace);
  result.iteration_seconds = std::move(best->seconds);
  summarize(result);
  return result;
}

void summarize(FitResult &result) {
  const std::size_t n = result.points();
  const auto nodes = static_cast<Eigen::Index>(result.shape.node_count());
  // The tree and path marginals depend on the local factors alone, so a
  // placeholder data matrix of the right height is enough.
  const vb::Problem sized(
      result.shape, result.hyper,
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), result.dim()));
  vb::SweepCache cache;
  vb::refresh_reach(sized, result.state, cache);
  vb::refresh_tree_marginals(sized, result.state, cache);

  result.node_posterior = cache.leaf_prob.cwiseProduct(cache.reach);
  result.map_nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    result.map_nodes[i] = vb::map_node(cache, i);
  result.leaf_mass = Eigen::VectorXd::Zero(nodes);
  if (n > 0)
    result.leaf_mass = result.node_posterior.colwise().sum().transpose();
}

Eigen::VectorXd local_posterior(const FitResult &result,
                                const Eigen::VectorXd &x) {
  Eigen::MatrixXd data(1, x.size());
  data.row(0) = x.transpose();
  const vb::Problem problem(result.shape, result.hyper, data);

  vb::VariationalState state = result.state;
  const vb::VariationalState fresh = vb::prior_state(problem);
  state.edge_prob = fresh.edge_prob;
  state.g_hat = fresh.g_hat;
  vb::SweepCache cache = vb::make_cache(problem, state);

  Eigen::VectorXd previous = vb::node_posterior(cache, 0);
  for (int it = 0; it < 1000; ++it) {
    vb::compute_phi_zeta(problem, cache);
    vb::update_q_z(problem, state, cache);
    vb::compute_phi_zeta(problem, cache);
    vb::update_q_T(problem, state, cache);
    Eigen::VectorXd current = vb::node_posterior(cache, 0);
    const double change = (current - previous).cwiseAbs().maxCoeff();
    previous = std::move(current);
    if (change < 1e-13)
      break;
  }
  return previous;
}

} // namespace tssb
