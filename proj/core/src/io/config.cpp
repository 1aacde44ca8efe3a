#include "tssb/io/config.hpp"

#include "tssb/errors.hpp"
#include "tssb/linalg.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tssb::io {

using nlohmann::json;

double DepthScaled::at(int depth) const {
  return base * std::pow(depth_factor, depth);
}

Eigen::MatrixXd MatrixSpec::at(int p) const {
  if (full)
    return *full;
  return scale * Eigen::MatrixXd::Identity(p, p);
}

namespace {

[[noreturn]] void fail(const std::string &field, const std::string &what) {
  throw ConfigError(field, what);
}

double positive_number(const json &v, const std::string &field) {
  if (!v.is_number())
    fail(field, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x))
    fail(field, "must be a positive finite number");
  return x;
}

long long integer(const json &v, const std::string &field, long long min) {
  if (!v.is_number_integer())
    fail(field, "expected an integer");
  const long long x = v.get<long long>();
  if (x < min)
    fail(field, "must be at least " + std::to_string(min));
  return x;
}

DepthScaled depth_scaled(const json &v, const std::string &field) {
  if (v.is_number())
    return {positive_number(v, field), 1.0};
  if (!v.is_object())
    fail(field, "expected a number or {\"base\", \"depth_factor\"}");
  DepthScaled out;
  for (const auto &[key, item] : v.items()) {
    if (key == "base")
      out.base = positive_number(item, field + ".base");
    else if (key == "depth_factor")
      out.depth_factor = positive_number(item, field + ".depth_factor");
    else
      fail(field + "." + key, "unknown field");
  }
  if (!v.contains("base"))
    fail(field + ".base", "missing");
  return out;
}

Eigen::VectorXd vector_of(const json &v, const std::string &field,
                          bool positive) {
  if (!v.is_array() || v.empty())
    fail(field, "expected a non-empty array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::string name = field + "[" + std::to_string(j) + "]";
    if (!v[j].is_number())
      fail(name, "expected a number");
    out[static_cast<Eigen::Index>(j)] =
        positive ? positive_number(v[j], name) : v[j].get<double>();
    if (!std::isfinite(out[static_cast<Eigen::Index>(j)]))
      fail(name, "must be finite");
  }
  return out;
}

MatrixSpec matrix_spec(const json &v, const std::string &field) {
  if (v.is_number())
    return {positive_number(v, field), std::nullopt};
  if (!v.is_array() || v.empty())
    fail(field, "expected a positive number or a square matrix");
  const auto p = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd m(p, p);
  for (Eigen::Index r = 0; r < p; ++r) {
    const Eigen::VectorXd row =
        vector_of(v[static_cast<std::size_t>(r)],
                  field + "[" + std::to_string(r) + "]", false);
    if (row.size() != p)
      fail(field, "matrix is not square");
    m.row(r) = row.transpose();
  }
  if (m != m.transpose())
    fail(field, "matrix is not symmetric");
  if (!is_positive_definite(m))
    fail(field, "matrix is not positive definite");
  return {1.0, m};
}

} // namespace

int RunConfig::dimension() const {
  if (p)
    return *p;
  if (hyper.root_mean)
    return static_cast<int>(hyper.root_mean->size());
  if (hyper.V.full)
    return static_cast<int>(hyper.V.full->rows());
  if (hyper.W.full)
    return static_cast<int>(hyper.W.full->rows());
  return 2;
}

Hyperparams RunConfig::materialize(int dim) const {
  if (dim < 1)
    fail("p", "dimension must be at least 1");
  auto check_dim = [&](Eigen::Index size, const std::string &field) {
    if (size != dim)
      fail(field, "has dimension " + std::to_string(size) +
                      " but the data have dimension " + std::to_string(dim));
  };
  if (p)
    check_dim(*p, "p");
  if (hyper.root_mean)
    check_dim(hyper.root_mean->size(), "root_mean");
  if (hyper.V.full)
    check_dim(hyper.V.full->rows(), "V");
  if (hyper.W.full)
    check_dim(hyper.W.full->rows(), "W");
  if (hyper.alpha.size() != 1 && hyper.alpha.size() != fit.K)
    fail("alpha", "must be a number or an array of K = " +
                      std::to_string(fit.K) + " entries");
  if (!(hyper.u > dim - 1))
    fail("u", "must exceed p - 1 = " + std::to_string(dim - 1));

  const TreeShape tree = shape();
  Hyperparams h;
  const auto nodes = static_cast<Eigen::Index>(tree.node_count());
  const auto inner = static_cast<Eigen::Index>(tree.inner_count());
  h.a = Eigen::VectorXd::Zero(inner);
  h.b = Eigen::VectorXd::Zero(inner);
  h.nu.resize(nodes);
  for (NodeId s = 0; s < tree.node_count(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    const int d = tree.node_depth(s);
    h.nu[c] = hyper.nu.at(d);
    if (!(h.nu[c] > dim - 1))
      fail("nu", "must exceed p - 1 = " + std::to_string(dim - 1) +
                     " at depth " + std::to_string(d));
    h.W.push_back(hyper.W.at(dim));
    if (tree.is_inner(s)) {
      h.a[c] = hyper.a.at(d);
      h.b[c] = hyper.b.at(d);
      if (!(h.a[c] > 0.0) || !std::isfinite(h.a[c]))
        fail("a", "underflows at depth " + std::to_string(d));
      if (!(h.b[c] > 0.0) || !std::isfinite(h.b[c]))
        fail("b", "underflows at depth " + std::to_string(d));
      h.alpha.push_back(hyper.alpha.size() == 1
                            ? Eigen::VectorXd::Constant(fit.K, hyper.alpha[0])
                            : hyper.alpha);
    }
  }
  h.u = hyper.u;
  h.V = hyper.V.at(dim);
  h.root_mean =
      hyper.root_mean ? *hyper.root_mean : Eigen::VectorXd::Zero(dim);
  return h;
}

RunConfig parse_config_text(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    fail("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    fail("<document>", "expected a JSON object");

  RunConfig cfg;
  for (const auto &[key, v] : doc.items()) {
    if (key == "K")
      cfg.fit.K = static_cast<int>(integer(v, key, 2));
    else if (key == "D")
      cfg.fit.D = static_cast<int>(integer(v, key, 1));
    else if (key == "iters")
      cfg.fit.iters = static_cast<int>(integer(v, key, 0));
    else if (key == "restarts")
      cfg.fit.restarts = static_cast<int>(integer(v, key, 1));
    else if (key == "threads")
      cfg.fit.threads = static_cast<unsigned>(integer(v, key, 1));
    else if (key == "seed") {
      if (!v.is_number_unsigned())
        fail(key, "expected a non-negative integer");
      cfg.fit.seed = v.get<std::uint64_t>();
    } else if (key == "tol") {
      if (!v.is_number() || !(v.get<double>() >= 0.0))
        fail(key, "must be a non-negative number");
      cfg.fit.tol = v.get<double>();
    } else if (key == "a")
      cfg.hyper.a = depth_scaled(v, key);
    else if (key == "b")
      cfg.hyper.b = depth_scaled(v, key);
    else if (key == "nu")
      cfg.hyper.nu = depth_scaled(v, key);
    else if (key == "alpha")
      cfg.hyper.alpha = v.is_number()
                            ? Eigen::VectorXd::Constant(1, positive_number(v, key))
                            : vector_of(v, key, true);
    else if (key == "u")
      cfg.hyper.u = positive_number(v, key);
    else if (key == "V")
      cfg.hyper.V = matrix_spec(v, key);
    else if (key == "W")
      cfg.hyper.W = matrix_spec(v, key);
    else if (key == "root_mean")
      cfg.hyper.root_mean = vector_of(v, key, false);
    else if (key == "generator") {
      if (!v.is_string() ||
          (v.get<std::string>() != "toy" && v.get<std::string>() != "tssb"))
        fail(key, "must be \"toy\" or \"tssb\"");
      cfg.generator = v.get<std::string>();
    } else if (key == "p")
      cfg.p = static_cast<int>(integer(v, key, 1));
    else
      fail(key, "unknown field");
  }
  // Surface dimension-dependent violations (nu <= p - 1, ...) at load time.
  (void)cfg.materialize(cfg.dimension());
  return cfg;
}

RunConfig parse_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

} // namespace tssb::io
