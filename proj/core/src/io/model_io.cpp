#include "tssb/io/model_io.hpp"

#include "tssb/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace tssb::io {

using nlohmann::json;

namespace {

json to_json(const Eigen::VectorXd &v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j)
    out.push_back(v[j]);
  return out;
}

template <typename Matrix> json to_json_rows(const Matrix &m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::VectorXd vector_from(const json &v, Eigen::Index size,
                            const std::string &what) {
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != size)
    throw FormatError(what + ": expected " + std::to_string(size) +
                      " numbers");
  Eigen::VectorXd out(size);
  for (Eigen::Index j = 0; j < size; ++j)
    out[j] = v.at(static_cast<std::size_t>(j)).get<double>();
  return out;
}

template <typename Matrix>
Matrix matrix_from(const json &v, Eigen::Index rows, Eigen::Index cols,
                   const std::string &what) {
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows)
    throw FormatError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    out.row(r) = vector_from(v[static_cast<std::size_t>(r)], cols, what)
                     .transpose();
  return out;
}

} // namespace

std::string format_model(const FitResult &result) {
  const auto &shape = result.shape;
  const auto &hyper = result.hyper;
  const auto &state = result.state;
  json doc;
  doc["format"] = kModelFormat;
  doc["K"] = shape.branching();
  doc["D"] = shape.depth();
  doc["p"] = result.dim();
  doc["n"] = result.points();
  doc["config"] = {{"iters", result.config.iters},
                   {"restarts", result.config.restarts},
                   {"seed", result.config.seed},
                   {"tol", result.config.tol}};
  doc["selected_restart"] = result.selected_restart;

  json alpha = json::array();
  for (const auto &a : hyper.alpha)
    alpha.push_back(to_json(a));
  json w = json::array();
  for (const auto &m : hyper.W)
    w.push_back(to_json_rows(m));
  doc["hyperparameters"] = {{"alpha", alpha},          {"a", to_json(hyper.a)},
                            {"b", to_json(hyper.b)},   {"nu", to_json(hyper.nu)},
                            {"W", w},                  {"u", hyper.u},
                            {"V", to_json_rows(hyper.V)},
                            {"root_mean", to_json(hyper.root_mean)}};

  json nodes = json::array();
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    json node = {{"id", s},
                 {"depth", shape.node_depth(s)},
                 {"m_hat", to_json(state.m_hat[s])},
                 {"L_hat", to_json_rows(state.L_hat[s])},
                 {"nu_hat", state.nu_hat[c]},
                 {"W_hat", to_json_rows(state.W_hat[s])}};
    if (shape.is_inner(s)) {
      node["alpha_hat"] = to_json(state.alpha_hat[s]);
      node["a_hat"] = state.a_hat[c];
      node["b_hat"] = state.b_hat[c];
    }
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  doc["u_hat"] = state.u_hat;
  doc["V_hat"] = to_json_rows(state.V_hat);
  doc["elbo_trace"] = result.elbo_trace;

  json restarts = json::array();
  for (const auto &r : result.restarts)
    restarts.push_back({{"ok", r.ok},
                        {"final_elbo", r.final_elbo},
                        {"iterations", r.iterations},
                        {"error", r.error}});
  doc["restarts"] = std::move(restarts);
  doc["local"] = {{"edge_prob", to_json_rows(state.edge_prob)},
                  {"g_hat", to_json_rows(state.g_hat)}};
  return doc.dump(1) + "\n";
}

void write_model(const FitResult &result, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write model '" + path.string() + "'");
  out << format_model(result);
  if (!out)
    throw IoError("failed writing model '" + path.string() + "'");
}

FitResult parse_model(const std::string &text) {
  try {
    const json doc = json::parse(text);
    if (!doc.is_object() || !doc.contains("format"))
      throw FormatError("model file has no format field");
    if (doc.at("format") != kModelFormat)
      throw FormatError("unsupported model format '" +
                        doc.at("format").dump() + "'");

    const TreeShape shape(doc.at("K").get<int>(), doc.at("D").get<int>());
    const int p = doc.at("p").get<int>();
    const auto n = static_cast<Eigen::Index>(doc.at("n").get<std::size_t>());
    if (p < 1)
      throw FormatError("p must be at least 1");
    const auto nodes = static_cast<Eigen::Index>(shape.node_count());
    const auto inner = static_cast<Eigen::Index>(shape.inner_count());
    const int k = shape.branching();

    FitResult result(shape);
    const json &cfg = doc.at("config");
    result.config.K = shape.branching();
    result.config.D = shape.depth();
    result.config.iters = cfg.at("iters").get<int>();
    result.config.restarts = cfg.at("restarts").get<int>();
    result.config.seed = cfg.at("seed").get<std::uint64_t>();
    result.config.tol = cfg.at("tol").get<double>();
    result.selected_restart = doc.at("selected_restart").get<int>();

    const json &h = doc.at("hyperparameters");
    auto &hyper = result.hyper;
    const json &alpha = h.at("alpha");
    if (!alpha.is_array() || static_cast<Eigen::Index>(alpha.size()) != inner)
      throw FormatError("hyperparameters.alpha: wrong length");
    for (const auto &a : alpha)
      hyper.alpha.push_back(vector_from(a, k, "hyperparameters.alpha"));
    hyper.a = vector_from(h.at("a"), inner, "hyperparameters.a");
    hyper.b = vector_from(h.at("b"), inner, "hyperparameters.b");
    hyper.nu = vector_from(h.at("nu"), nodes, "hyperparameters.nu");
    const json &w = h.at("W");
    if (!w.is_array() || static_cast<Eigen::Index>(w.size()) != nodes)
      throw FormatError("hyperparameters.W: wrong length");
    for (const auto &m : w)
      hyper.W.push_back(
          matrix_from<Eigen::MatrixXd>(m, p, p, "hyperparameters.W"));
    hyper.u = h.at("u").get<double>();
    hyper.V = matrix_from<Eigen::MatrixXd>(h.at("V"), p, p, "hyperparameters.V");
    hyper.root_mean = vector_from(h.at("root_mean"), p, "root_mean");
    try {
      hyper.validate(shape);
    } catch (const DomainError &e) {
      throw FormatError(std::string("invalid hyperparameters: ") + e.what());
    }

    auto &state = result.state;
    const json &node_list = doc.at("nodes");
    if (!node_list.is_array() ||
        static_cast<Eigen::Index>(node_list.size()) != nodes)
      throw FormatError("nodes: expected one entry per tree node");
    state.a_hat.resize(inner);
    state.b_hat.resize(inner);
    state.nu_hat.resize(nodes);
    for (NodeId s = 0; s < shape.node_count(); ++s) {
      const json &node = node_list[s];
      const auto c = static_cast<Eigen::Index>(s);
      if (node.at("id").get<std::size_t>() != s)
        throw FormatError("nodes: entries out of order");
      state.m_hat.push_back(vector_from(node.at("m_hat"), p, "m_hat"));
      state.L_hat.push_back(
          matrix_from<Eigen::MatrixXd>(node.at("L_hat"), p, p, "L_hat"));
      state.nu_hat[c] = node.at("nu_hat").get<double>();
      state.W_hat.push_back(
          matrix_from<Eigen::MatrixXd>(node.at("W_hat"), p, p, "W_hat"));
      if (shape.is_inner(s)) {
        state.alpha_hat.push_back(
            vector_from(node.at("alpha_hat"), k, "alpha_hat"));
        state.a_hat[c] = node.at("a_hat").get<double>();
        state.b_hat[c] = node.at("b_hat").get<double>();
      }
    }
    state.u_hat = doc.at("u_hat").get<double>();
    state.V_hat = matrix_from<Eigen::MatrixXd>(doc.at("V_hat"), p, p, "V_hat");

    result.elbo_trace = doc.at("elbo_trace").get<std::vector<double>>();
    for (const auto &r : doc.at("restarts")) {
      RestartRecord record;
      record.ok = r.at("ok").get<bool>();
      record.final_elbo = r.at("final_elbo").get<double>();
      record.iterations = r.at("iterations").get<int>();
      record.error = r.at("error").get<std::string>();
      result.restarts.push_back(std::move(record));
    }

    const json &local = doc.at("local");
    state.edge_prob = matrix_from<vb::PointNodeMatrix>(local.at("edge_prob"), n,
                                                       nodes, "edge_prob");
    state.g_hat =
        matrix_from<vb::PointNodeMatrix>(local.at("g_hat"), n, nodes, "g_hat");
    summarize(result);
    return result;
  } catch (const json::exception &e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  } catch (const DomainError &e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

FitResult read_model(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open model '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

} // namespace tssb::io
