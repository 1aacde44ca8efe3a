#include "tssb_cli/commands.hpp"

#include "tssb/elbo.hpp"
#include "tssb/errors.hpp"
#include "tssb/fit.hpp"
#include "tssb/generative.hpp"
#include "tssb/io/config.hpp"
#include "tssb/io/dataset.hpp"
#include "tssb/io/export.hpp"
#include "tssb/io/model_io.hpp"
#include "tssb/metrics.hpp"
#include "tssb/updates.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace tssb::cli {

using nlohmann::json;

namespace {

/// Human-readable lines, or one JSON object per line with --json.
class Reporter {
public:
  Reporter(std::ostream &out, bool as_json) : out_(out), json_(as_json) {}

  void emit(const json &record, const std::string &text) {
    if (json_)
      out_ << record.dump() << '\n';
    else
      out_ << text << '\n';
  }

  void seed(Seed s) {
    emit({{"event", "seed"}, {"seed", s}}, "seed: " + std::to_string(s));
  }

private:
  std::ostream &out_;
  bool json_;
};

std::string fmt(const char *spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string vec_text(const Eigen::VectorXd &v, const char *spec = "%.4g") {
  std::string s = "(";
  for (Eigen::Index j = 0; j < v.size(); ++j)
    s += (j ? ", " : "") + fmt(spec, v[j]);
  return s + ")";
}

json vec_json(const Eigen::VectorXd &v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

struct FitFlags {
  std::string data, config, out, assignments, dot;
  Seed seed = 0;
  int restarts = 0, iters = 0;
  unsigned threads = 1;
  CLI::Option *seed_opt = nullptr, *restarts_opt = nullptr,
              *iters_opt = nullptr, *threads_opt = nullptr;
};

struct GenerateFlags {
  std::string config, out;
  long long n = 0;
  Seed seed = 0;
  bool labels = false;
  CLI::Option *seed_opt = nullptr;
};

struct InspectFlags {
  std::string model, data;
  long long point = -1;
  CLI::Option *point_opt = nullptr;
};

struct BenchFlags {
  std::string config;
  std::vector<long long> sizes;
  Seed seed = 0;
  CLI::Option *seed_opt = nullptr;
};

io::Dataset generate_data(const io::RunConfig &cfg, std::size_t n, Seed seed) {
  io::Dataset out;
  GeneratedData gen;
  if (cfg.generator == "toy") {
    if (cfg.dimension() != 2)
      throw ConfigError("p", "the toy generator is two-dimensional");
    gen = sample_toy_dataset(n, seed);
  } else {
    const Rng root(seed);
    const ModelParams params = sample_parameters(
        cfg.shape(), cfg.materialize(cfg.dimension()), root.split(0).seed());
    gen = sample_dataset(params, n, root.split(1).seed());
  }
  out.values = std::move(gen.points);
  out.labels = std::vector<long>(gen.labels.begin(), gen.labels.end());
  return out;
}

int run_generate(const GenerateFlags &f, Reporter &report, std::ostream &err) {
  if (f.n <= 0) {
    err << "error: --n must be a positive integer\n";
    return kUsage;
  }
  io::RunConfig cfg = io::parse_config(f.config);
  const Seed seed = *f.seed_opt ? f.seed : cfg.fit.seed;
  report.seed(seed);
  io::Dataset data = generate_data(cfg, static_cast<std::size_t>(f.n), seed);
  if (!f.labels)
    data.labels.reset();
  io::write_csv_dataset(data, f.out);
  report.emit({{"event", "generated"},
               {"rows", data.n()},
               {"p", data.p()},
               {"generator", cfg.generator},
               {"path", f.out}},
              "wrote " + std::to_string(data.n()) + " rows (p=" +
                  std::to_string(data.p()) + ", generator " + cfg.generator +
                  ") to " + f.out);
  return kOk;
}

int run_fit(const FitFlags &f, Reporter &report) {
  io::RunConfig cfg = io::parse_config(f.config);
  if (*f.seed_opt)
    cfg.fit.seed = f.seed;
  if (*f.restarts_opt)
    cfg.fit.restarts = f.restarts;
  if (*f.iters_opt)
    cfg.fit.iters = f.iters;
  if (*f.threads_opt)
    cfg.fit.threads = f.threads;
  report.seed(cfg.fit.seed);

  const io::Dataset data = io::read_csv_dataset(f.data);
  const Hyperparams hyper = cfg.materialize(data.p());
  const FitResult result = fit(data.values, hyper, cfg.fit);

  for (std::size_t r = 0; r < result.restarts.size(); ++r) {
    const auto &rec = result.restarts[r];
    if (rec.ok)
      report.emit({{"event", "restart"},
                   {"index", r},
                   {"ok", true},
                   {"final_elbo", rec.final_elbo},
                   {"iterations", rec.iterations}},
                  "restart " + std::to_string(r) + ": final ELBO " +
                      fmt("%.10g", rec.final_elbo) + " after " +
                      std::to_string(rec.iterations) + " iterations");
    else
      report.emit(
          {{"event", "restart"}, {"index", r}, {"ok", false},
           {"error", rec.error}},
          "restart " + std::to_string(r) + ": failed: " + rec.error);
  }
  report.emit({{"event", "selected"},
               {"restart", result.selected_restart},
               {"elbo", result.elbo_trace.back()}},
              "selected restart " + std::to_string(result.selected_restart) +
                  " with ELBO " + fmt("%.10g", result.elbo_trace.back()));
  if (data.labels && data.n() >= 2) {
    std::vector<long> map(result.map_nodes.begin(), result.map_nodes.end());
    const double ari = adjusted_rand_index(*data.labels, map);
    report.emit({{"event", "ari"}, {"ari", ari}},
                "adjusted Rand index vs labels: " + fmt("%.4f", ari));
  }

  io::write_model(result, f.out);
  io::write_assignments(result, f.assignments);
  if (!f.dot.empty())
    io::export_dot(result, f.dot);
  report.emit({{"event", "wrote"}, {"model", f.out},
               {"assignments", f.assignments}, {"dot", f.dot}},
              "wrote model to " + f.out + ", assignments to " + f.assignments +
                  (f.dot.empty() ? "" : ", tree to " + f.dot));
  return kOk;
}

int run_inspect(const InspectFlags &f, Reporter &report, std::ostream &err) {
  const FitResult result = io::read_model(f.model);
  report.seed(result.config.seed);
  const auto &shape = result.shape;
  const auto &state = result.state;
  report.emit({{"event", "model"},
               {"K", shape.branching()},
               {"D", shape.depth()},
               {"p", result.dim()},
               {"n", result.points()},
               {"nodes", shape.node_count()},
               {"selected_restart", result.selected_restart}},
              "tree K=" + std::to_string(shape.branching()) +
                  " D=" + std::to_string(shape.depth()) + ", " +
                  std::to_string(shape.node_count()) + " nodes, p=" +
                  std::to_string(result.dim()) + ", n=" +
                  std::to_string(result.points()));

  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    json rec = {{"event", "node"},
                {"id", s},
                {"depth", shape.node_depth(s)},
                {"m_hat", vec_json(state.m_hat[s])},
                {"mass", result.leaf_mass[c]}};
    std::string text = "node " + std::to_string(s) + " depth " +
                       std::to_string(shape.node_depth(s)) + " m=" +
                       vec_text(state.m_hat[s]) + " N=" +
                       fmt("%.4g", result.leaf_mass[c]);
    if (shape.is_inner(s)) {
      const double mean_g =
          result.points() == 0 ? 0.0 : state.g_hat.col(c).mean();
      const double e_g = state.a_hat[c] / (state.a_hat[c] + state.b_hat[c]);
      rec["g_hat_mean"] = mean_g;
      rec["g_expected"] = e_g;
      text += " mean g_hat=" + fmt("%.4f", mean_g) +
              " E[g]=" + fmt("%.4f", e_g);
    }
    report.emit(rec, text);
  }

  const auto &trace = result.elbo_trace;
  const std::size_t tail = std::min<std::size_t>(trace.size(), 5);
  std::vector<double> last(trace.end() - static_cast<std::ptrdiff_t>(tail),
                           trace.end());
  std::string text = "ELBO trace (" + std::to_string(trace.size()) +
                     " values), last " + std::to_string(tail) + ":";
  for (double v : last)
    text += " " + fmt("%.10g", v);
  report.emit({{"event", "elbo_tail"}, {"length", trace.size()},
               {"tail", last}},
              text);

  if (*f.point_opt) {
    Eigen::VectorXd post;
    if (!f.data.empty()) {
      const io::Dataset data = io::read_csv_dataset(f.data);
      if (f.point < 0 || static_cast<std::size_t>(f.point) >= data.n()) {
        err << "error: --point " << f.point << " is outside the " << data.n()
            << " rows of " << f.data << "\n";
        return kDataError;
      }
      if (data.p() != result.dim()) {
        err << "error: " << f.data << " has dimension " << data.p()
            << " but the model has " << result.dim() << "\n";
        return kDataError;
      }
      post = local_posterior(result, data.values.row(f.point).transpose());
    } else {
      if (f.point < 0 || static_cast<std::size_t>(f.point) >= result.points()) {
        err << "error: --point " << f.point << " is outside the "
            << result.points() << " fitted rows\n";
        return kDataError;
      }
      post = result.node_posterior.row(f.point).transpose();
    }
    std::string line = "posterior of row " + std::to_string(f.point) + ":";
    for (Eigen::Index s = 0; s < post.size(); ++s)
      line += " " + std::to_string(s) + ":" + fmt("%.6g", post[s]);
    line += " (sum " + fmt("%.12f", post.sum()) + ")";
    report.emit({{"event", "posterior"}, {"row", f.point},
                 {"probabilities", vec_json(post)}, {"sum", post.sum()}},
                line);
  }
  return kOk;
}

int run_bench(const BenchFlags &f, Reporter &report, std::ostream &err) {
  if (f.sizes.empty() ||
      std::any_of(f.sizes.begin(), f.sizes.end(),
                  [](long long n) { return n < 1; })) {
    err << "error: --sizes must list positive integers\n";
    return kUsage;
  }
  io::RunConfig cfg = io::parse_config(f.config);
  const Seed seed = *f.seed_opt ? f.seed : cfg.fit.seed;
  const unsigned threads = cfg.fit.threads;
  report.seed(seed);
  const TreeShape shape = cfg.shape();

  std::vector<double> seconds;
  for (long long n : f.sizes) {
    const io::Dataset data =
        generate_data(cfg, static_cast<std::size_t>(n), seed);
    const vb::Problem problem(shape, cfg.materialize(data.p()), data.values,
                              Executor(threads));
    vb::VariationalState state = vb::init_state(problem, seed);
    vb::SweepCache cache = vb::make_cache(problem, state);
    vb::sweep(problem, state, cache); // warm-up
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      vb::sweep(problem, state, cache);
      best = std::min(best, std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count());
    }
    const double value = vb::elbo(problem, state, cache);
    seconds.push_back(best);
    report.emit({{"event", "bench"},
                 {"n", n},
                 {"seconds_per_iteration", best},
                 {"data_sum", data.values.sum()},
                 {"elbo", value}},
                "n=" + std::to_string(n) + "  seconds/iteration=" +
                    fmt("%.6f", best) + "  data_sum=" +
                    fmt("%.17g", data.values.sum()));
  }

  bool linear = true;
  for (std::size_t k = 1; k < seconds.size(); ++k) {
    const double size_ratio =
        static_cast<double>(f.sizes[k]) / static_cast<double>(f.sizes[k - 1]);
    const double time_ratio = seconds[k] / seconds[k - 1];
    const bool ok = time_ratio >= 0.7 * size_ratio &&
                    time_ratio <= 1.3 * size_ratio;
    linear = linear && ok;
    report.emit({{"event", "scaling"},
                 {"from", f.sizes[k - 1]},
                 {"to", f.sizes[k]},
                 {"time_ratio", time_ratio},
                 {"allowed", {0.7 * size_ratio, 1.3 * size_ratio}},
                 {"ok", ok}},
                "n " + std::to_string(f.sizes[k - 1]) + " -> " +
                    std::to_string(f.sizes[k]) + ": time ratio " +
                    fmt("%.3f", time_ratio) + " (allowed " +
                    fmt("%.2f", 0.7 * size_ratio) + "-" +
                    fmt("%.2f", 1.3 * size_ratio) + ") " +
                    (ok ? "ok" : "NOT LINEAR"));
  }
  if (!linear) {
    err << "error: per-sweep time is not linear in n\n";
    return kNumericError;
  }
  return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Tree-structured stick-breaking mixtures learned by "
               "variational Bayes"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Line-delimited JSON reports");

  GenerateFlags gen;
  auto *generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->add_option("--config", gen.config, "Run config (JSON)")
      ->required();
  generate->add_option("--n", gen.n, "Number of rows")->required();
  generate->add_option("--out", gen.out, "Output CSV")->required();
  gen.seed_opt = generate->add_option("--seed", gen.seed, "Seed override");
  generate->add_flag("--labels", gen.labels, "Append the true labels");

  FitFlags fitf;
  auto *fit_cmd = app.add_subcommand("fit", "Fit a model to a dataset");
  fit_cmd->add_option("--data", fitf.data, "Dataset CSV")->required();
  fit_cmd->add_option("--config", fitf.config, "Run config (JSON)")
      ->required();
  fit_cmd->add_option("--out", fitf.out, "Model file to write")->required();
  fit_cmd->add_option("--assignments", fitf.assignments,
                      "MAP assignments CSV to write")
      ->required();
  fit_cmd->add_option("--dot", fitf.dot, "Graphviz tree to write");
  fitf.seed_opt = fit_cmd->add_option("--seed", fitf.seed, "Seed override");
  fitf.restarts_opt = fit_cmd->add_option("--restarts", fitf.restarts,
                                          "Number of random restarts");
  fitf.iters_opt =
      fit_cmd->add_option("--iters", fitf.iters, "Iteration cap per restart");
  fitf.threads_opt = fit_cmd->add_option("--threads", fitf.threads,
                                         "Worker threads (results unchanged)")
                         ->check(CLI::PositiveNumber);

  InspectFlags insp;
  auto *inspect = app.add_subcommand("inspect", "Summarize a model file");
  inspect->add_option("--model", insp.model, "Model file")->required();
  inspect->add_option("--data", insp.data, "Dataset CSV for --point");
  insp.point_opt =
      inspect->add_option("--point", insp.point, "Row whose posterior to print");

  BenchFlags bench;
  auto *bench_cmd = app.add_subcommand("bench", "Time one sweep per size");
  bench_cmd->add_option("--config", bench.config, "Run config (JSON)")
      ->required();
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes")
      ->required()
      ->delimiter(',');
  bench.seed_opt = bench_cmd->add_option("--seed", bench.seed, "Seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Reporter report(out, as_json);
  try {
    if (*generate)
      return run_generate(gen, report, err);
    if (*fit_cmd)
      return run_fit(fitf, report);
    if (*inspect)
      return run_inspect(insp, report, err);
    return run_bench(bench, report, err);
  } catch (const NumericError &e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception &e) {
    // ConfigError, ParseError, FormatError, IoError, DomainError
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

} // namespace tssb::cli
