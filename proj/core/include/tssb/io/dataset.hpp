#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tssb::io {

struct Dataset {
  Eigen::MatrixXd values; ///< n x p, all finite
  /// Pass-through evaluation labels; the learner never reads them.
  std::optional<std::vector<long>> labels;

  [[nodiscard]] std::size_t n() const noexcept {
    return static_cast<std::size_t>(values.rows());
  }
  [[nodiscard]] int p() const noexcept {
    return static_cast<int>(values.cols());
  }
};

/// Comma-separated numbers, one point per line. A first row containing any
/// non-numeric cell is taken as a header; if its last column is named
/// "label" that column is read as integer labels. Blank lines are skipped.
/// Throws IoError if the file cannot be read and ParseError (1-based line)
/// on ragged rows, non-numeric cells, NaN or infinity, or an empty body.
[[nodiscard]] Dataset read_csv_dataset(const std::filesystem::path &path);
[[nodiscard]] Dataset parse_csv_dataset(const std::string &text);

/// Header x0..x{p-1}[,label]; values at 17 significant digits so that
/// reading back is lossless.
void write_csv_dataset(const Dataset &data, const std::filesystem::path &path);
[[nodiscard]] std::string format_csv_dataset(const Dataset &data);

} // namespace tssb::io
