#pragma once

#include <stdexcept>
#include <string>

namespace hyperwind {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Travelling-wave reduction with v^2 = 1 (the (v^2-1) factors vanish).
class SingularReductionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation requested at or past a finite-time singularity.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t_star)
      : std::runtime_error(what), t_star_(t_star) {}
  double t_star() const noexcept { return t_star_; }

 private:
  double t_star_;
};

/// Complete elliptic integral requested at m = 1.
class InfiniteResultError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hyperwind
