#pragma once

#include <stdexcept>
#include <string>

namespace lmeasure {

/// Argument outside the domain of an operation (non-positive shape, bad
/// dimension, malformed partition, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density was evaluated where it is unbounded (boundary of the simplex or
/// orthant with a shape below one).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Estimator refused because its weighted second moment is infinite.
class VarianceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual input (step-function specs, partition lists).
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure (quadrature, root finding) did not reach its
/// tolerance. The message carries the diagnostics.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lmeasure
