#include "tssb/io/export.hpp"

#include "tssb/errors.hpp"

#include <cstdio>
#include <fstream>

namespace tssb::io {

namespace {

std::string number(const char *fmt, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_text(const std::string &text, const std::filesystem::path &path,
                const char *what) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError(std::string("cannot write ") + what + " '" + path.string() +
                  "'");
  out << text;
  if (!out)
    throw IoError(std::string("failed writing ") + what + " '" +
                  path.string() + "'");
}

} // namespace

std::string format_assignments(const FitResult &result) {
  std::string out = "row,map_node,map_prob,depth\n";
  for (std::size_t i = 0; i < result.points(); ++i) {
    const NodeId s = result.map_nodes[i];
    const double prob = result.node_posterior(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(s));
    out += std::to_string(i) + ',' + std::to_string(s) + ',' +
           number("%.17g", prob) + ',' +
           std::to_string(result.shape.node_depth(s)) + '\n';
  }
  return out;
}

void write_assignments(const FitResult &result,
                       const std::filesystem::path &path) {
  write_text(format_assignments(result), path, "assignments");
}

std::string format_dot(const FitResult &result, double min_mass) {
  const auto &shape = result.shape;
  std::string out = "digraph tssb {\n  node [shape=box];\n";
  for (NodeId s = 0; s < shape.node_count(); ++s) {
    const auto &m = result.state.m_hat[s];
    const double mass = result.leaf_mass[static_cast<Eigen::Index>(s)];
    std::string mean;
    for (Eigen::Index j = 0; j < m.size(); ++j)
      mean += (j ? ", " : "") + number("%.2g", m[j]);
    out += "  n" + std::to_string(s) + " [label=\"" + std::to_string(s) +
           "\\nm=(" + mean + ")\\nN=" + number("%.3g", mass) + "\"";
    if (mass < min_mass)
      out += ", style=dashed";
    out += "];\n";
  }
  for (NodeId s = 1; s < shape.node_count(); ++s)
    out += "  n" + std::to_string(shape.parent(s)) + " -> n" +
           std::to_string(s) + ";\n";
  out += "}\n";
  return out;
}

void export_dot(const FitResult &result, const std::filesystem::path &path,
                double min_mass) {
  write_text(format_dot(result, min_mass), path, "DOT file");
}

} // namespace tssb::io
