#pragma once

#include <stdexcept>
#include <string>

namespace ckspace {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the formula being evaluated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A centrifugal barrier b/q^2 was evaluated at |q| below the guard.
class BarrierSingularity : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No real polar/Beltrami point corresponds to the input.
class ChartDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

class JacobianSingular : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Curvature requested on a space whose metric is degenerate (kappa2 = 0).
class DegenerateMetric : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Guard used by the 1/q^2 barrier terms.
inline constexpr double kBarrierGuard = 1e-10;
/// Guard used by trigonometric kernels (gtan, polar denominators).
inline constexpr double kKernelGuard = 1e-12;

}  // namespace ckspace
