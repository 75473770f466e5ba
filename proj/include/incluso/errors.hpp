#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace incluso {

/// Malformed call or configuration (bad dimensions, unsupported combination, invalid field).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point outside the domain of an operation (e.g. not in K).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter outside the range where a closed form is valid.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A run produced a non-finite value at `iteration`.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(std::size_t iteration, const std::string& what)
      : std::runtime_error("numeric failure at iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace incluso
