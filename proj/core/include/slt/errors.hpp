#pragma once

#include <stdexcept>
#include <string>

namespace slt {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Pointwise evaluation hit a genuine singularity of the object being
/// evaluated (e.g. the renormalized kernel on the diagonal v = u).
class SingularInput : public std::domain_error {
 public:
  explicit SingularInput(const std::string& what) : std::domain_error(what) {}
};

/// An integrand reported a singularity away from the edge where the
/// quadrature expects (and tolerates) one.
class PropagatedSingularity : public std::runtime_error {
 public:
  explicit PropagatedSingularity(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slt
