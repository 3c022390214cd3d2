#pragma once

#include <stdexcept>
#include <string>

namespace lieheat {

/// A point lies outside the region where an operation is defined: beyond the
/// injectivity radius of the exponential chart, or on a Weyl-singular element.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a chart point has an ad-eigenvalue of modulus >= 2*pi.
class ChartDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Thrown when the Weyl denominator vanishes (numerically) at a torus point.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Two routes that must agree did not; signals corrupted structure data.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lieheat
