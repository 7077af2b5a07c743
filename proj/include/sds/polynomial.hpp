#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sds {

struct PolyValue {
  double value;
  double d1;
  double d2;
};

/// Real polynomial c0 + c1 z + ... + cM z^M.
///
/// At least one coefficient; the leading one must be nonzero unless M = 0.
/// Evaluation is Horner's scheme, switching to compensated (error-free
/// transformation) Horner for degree > 8.
class ProfilePolynomial {
 public:
  explicit ProfilePolynomial(std::vector<double> coefficients);
  ProfilePolynomial(std::initializer_list<double> coefficients)
      : ProfilePolynomial(std::vector<double>(coefficients)) {}

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::span<const double> coefficients() const { return coeffs_; }

  double operator()(double z) const;
  /// Value, first and second derivative at z.
  PolyValue eval(double z) const;

  ProfilePolynomial derivative() const;
  /// Coefficients of q(x) = p(origin + sign * x).
  std::vector<double> shifted(double origin, double sign) const;

 private:
  std::vector<double> coeffs_;
};

/// Truncated power-series arithmetic on coefficient vectors (index = power).
namespace series {

using Coeffs = std::vector<double>;

Coeffs truncate(Coeffs a, std::size_t order);
Coeffs add(const Coeffs& a, const Coeffs& b, std::size_t order);
Coeffs scale(const Coeffs& a, double s, std::size_t order);
Coeffs multiply(const Coeffs& a, const Coeffs& b, std::size_t order);
/// a / b; requires b[0] != 0.
Coeffs divide(const Coeffs& a, const Coeffs& b, std::size_t order);
Coeffs differentiate(const Coeffs& a);
double evaluate(const Coeffs& a, double x);

}  // namespace series

}  // namespace sds
