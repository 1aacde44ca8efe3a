#pragma once

#include "tssb/fit.hpp"

#include <filesystem>
#include <string>

namespace tssb::io {

/// CSV "row,map_node,map_prob,depth", one line per data point.
[[nodiscard]] std::string format_assignments(const FitResult &result);
void write_assignments(const FitResult &result,
                       const std::filesystem::path &path);

/// Graphviz digraph of the full tree. Labels carry the node id, m_hat at two
/// significant digits and N~_s; nodes with N~_s < `min_mass` are dashed.
[[nodiscard]] std::string format_dot(const FitResult &result,
                                     double min_mass = 1.0);
void export_dot(const FitResult &result, const std::filesystem::path &path,
                double min_mass = 1.0);

} // namespace tssb::io
