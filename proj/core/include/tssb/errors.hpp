#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tssb {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration oracle would exceed its configured cap.
class CapacityError : public std::length_error {
public:
  CapacityError(const std::string &what, std::size_t cap)
      : std::length_error(what), cap_(cap) {}

  [[nodiscard]] std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

/// Non-finite value or lost positive definiteness inside the learner.
/// `point` and `node` locate the failure when known.
class NumericError : public std::runtime_error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NumericError(const std::string &what, std::size_t point = npos,
                        std::size_t node = npos)
      : std::runtime_error(format(what, point, node)), point_(point),
        node_(node) {}

  [[nodiscard]] std::size_t point() const noexcept { return point_; }
  [[nodiscard]] std::size_t node() const noexcept { return node_; }

private:
  static std::string format(const std::string &what, std::size_t point,
                            std::size_t node) {
    std::string out = what;
    if (point != npos)
      out += " (point " + std::to_string(point) + ")";
    if (node != npos)
      out += " (node " + std::to_string(node) + ")";
    return out;
  }

  std::size_t point_;
  std::size_t node_;
};

/// Malformed CSV input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Invalid run configuration. Carries the offending field name.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &field, const std::string &what)
      : std::runtime_error("config field '" + field + "': " + what),
        field_(field) {}

  [[nodiscard]] const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Model file with a wrong version or schema.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tssb
