#include "tssb/io/dataset.hpp"

#include "tssb/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tssb::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return cells;
}

// from_chars rejects a leading '+', which CSV writers sometimes emit.
std::optional<double> to_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+')
    cell.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || end != cell.data() + cell.size() || cell.empty())
    return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view cell) {
  long v = 0;
  const auto [end, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || end != cell.data() + cell.size() || cell.empty())
    return std::nullopt;
  return v;
}

std::string show(std::string_view cell) {
  return "'" + std::string(cell) + "'";
}

} // namespace

Dataset parse_csv_dataset(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  bool has_labels = false;
  std::size_t width = 0; // cells per row, label included
  std::vector<double> values;
  std::vector<long> labels;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
      line.erase(0, 3);
    if (trim(line).empty())
      continue;
    const auto cells = split_cells(line);

    if (first) {
      first = false;
      bool numeric = true;
      for (auto c : cells)
        numeric = numeric && to_double(c).has_value();
      width = cells.size();
      if (!numeric) {
        has_labels = cells.back() == "label";
        if (has_labels && width < 2)
          throw ParseError("header has a label column but no features",
                           line_no);
        continue;
      }
    }
    if (cells.size() != width)
      throw ParseError("expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    const std::size_t features = has_labels ? width - 1 : width;
    for (std::size_t j = 0; j < features; ++j) {
      const auto v = to_double(cells[j]);
      if (!v)
        throw ParseError("non-numeric cell " + show(cells[j]), line_no);
      if (!std::isfinite(*v))
        throw ParseError("non-finite cell " + show(cells[j]), line_no);
      values.push_back(*v);
    }
    if (has_labels) {
      const auto l = to_long(cells.back());
      if (!l)
        throw ParseError("label " + show(cells.back()) + " is not an integer",
                         line_no);
      labels.push_back(*l);
    }
  }

  const std::size_t p = has_labels ? width - 1 : width;
  if (values.empty())
    throw ParseError("no data rows", line_no == 0 ? 1 : line_no);
  const std::size_t n = values.size() / p;
  Dataset out;
  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          values[i * p + j];
  if (has_labels)
    out.labels = std::move(labels);
  return out;
}

Dataset read_csv_dataset(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open dataset '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_dataset(buf.str());
}

std::string format_csv_dataset(const Dataset &data) {
  std::string out;
  for (int j = 0; j < data.p(); ++j)
    out += (j ? ",x" : "x") + std::to_string(j);
  if (data.labels)
    out += ",label";
  out += '\n';
  char cell[32];
  for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.values.cols(); ++j) {
      std::snprintf(cell, sizeof cell, "%.17g", data.values(i, j));
      if (j)
        out += ',';
      out += cell;
    }
    if (data.labels)
      out += ',' + std::to_string((*data.labels)[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  return out;
}

void write_csv_dataset(const Dataset &data, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write dataset '" + path.string() + "'");
  out << format_csv_dataset(data);
  if (!out)
    throw IoError("failed writing dataset '" + path.string() + "'");
}

} // namespace tssb::io
