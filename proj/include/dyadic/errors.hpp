#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

/// Malformed data: bad JSON, bad rational text, wrong cell count.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input that violates an operation's hypothesis
/// (threshold below the mean, negative cell for a nonnegative-only functional, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace dyadic
