#pragma once

#include <stdexcept>
#include <string>

namespace sds {

/// Argument outside the domain where an operation is defined
/// (derivatives at a pole, negative Bessel argument, E <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its requested accuracy.
/// `achieved` carries the best accuracy estimate when one is known.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved = -1.0)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Sampling grid too coarse for the requested finite-difference estimate.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The quantization condition has a zero denominator (paper form, alpha = 0).
class DegenerateConditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

std::string format_double(double value);

}  // namespace sds
