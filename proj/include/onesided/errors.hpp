#pragma once

#include <stdexcept>
#include <string>

namespace onesided {

/// Argument outside the mathematical domain of an operation (negative weight,
/// endpoint outside the window, vanishing coefficient, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Two sampled functions that were expected to share a grid do not.
class GridError : public std::invalid_argument {
 public:
  explicit GridError(const std::string& what) : std::invalid_argument(what) {}
};

/// Search or quadrature configuration that cannot be honoured.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace onesided
