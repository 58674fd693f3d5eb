#pragma once

#include <stdexcept>

namespace kahler {

/// An argument lies outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A mixing parameter k violates the admissibility constraint of the
/// Sobolev family, p <= 1 + (m+1)/(m-1) * 4k/(k+1)^2.
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The Rayleigh denominator integral vanished to working precision.
class DegenerateDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Name not present in the fixed expression/identity catalog.
class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical solver failed to bracket or converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kahler
