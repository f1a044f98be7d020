#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace basinscope {

/// Base of all domain errors raised by the toolkit.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed network, formula, state string or import file.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t line, std::size_t column = 0)
      : error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string msg = "line " + std::to_string(line);
    if (column > 0) {
      msg += ", column " + std::to_string(column);
    }
    return msg + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Semantically invalid request (empty set where one is required, non-terminal seed, ...).
class domain_error : public error {
public:
  using error::error;
};

/// Resource limit of the decision-diagram manager was exceeded.
class resource_error : public error {
public:
  using error::error;
};

} // namespace basinscope
