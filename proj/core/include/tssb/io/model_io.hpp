#pragma once

#include "tssb/fit.hpp"

#include <filesystem>
#include <string>

namespace tssb::io {

inline constexpr const char *kModelFormat = "tssb-vb/1";

/// JSON with the tree shape, hyperparameters, every variational factor
/// (global and per point), the ELBO trace and restart records. Doubles are
/// written in shortest round-trip form, so read -> write is byte-identical.
/// Wall-clock timings are left out to keep files deterministic.
[[nodiscard]] std::string format_model(const FitResult &result);
void write_model(const FitResult &result, const std::filesystem::path &path);

/// Throws FormatError on a missing or foreign version, a schema violation,
/// or inconsistent sizes; IoError if the file cannot be read.
[[nodiscard]] FitResult parse_model(const std::string &text);
[[nodiscard]] FitResult read_model(const std::filesystem::path &path);

} // namespace tssb::io
