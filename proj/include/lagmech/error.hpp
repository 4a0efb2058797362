#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lagmech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A field evaluation left its smooth domain (log of a non-positive number,
// division by zero, non-finite derivative, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The y-Hessian of the Lagrangian is (numerically) rank deficient at the
// evaluation point.
class SingularMetric : public Error {
 public:
  SingularMetric(double min_abs_eigen, double max_abs_eigen)
      : Error("singular metric: |lambda|_min = " + std::to_string(min_abs_eigen) +
              ", |lambda|_max = " + std::to_string(max_abs_eigen)),
        min_abs_eigen_(min_abs_eigen),
        max_abs_eigen_(max_abs_eigen) {}

  double min_abs_eigen() const noexcept { return min_abs_eigen_; }
  double max_abs_eigen() const noexcept { return max_abs_eigen_; }

 private:
  double min_abs_eigen_;
  double max_abs_eigen_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(std::string name)
      : Error("unbound parameter: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnknownBuiltin : public Error {
 public:
  explicit UnknownBuiltin(const std::string& id) : Error("unknown builtin system: " + id) {}
};

// Malformed run configuration (bad JSON shape, dimension mismatch, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lagmech
