#pragma once

#include <stdexcept>
#include <string>

namespace lagint {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A kernel density was requested at an anchor with tied (or zero) coordinates.
/// The kernel itself is defined there only as a weak limit.
class DegenerateAnchorError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The request is valid mathematically but outside what this implementation supports
/// (dimension caps, integer-only matrix models, ...).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lagint
