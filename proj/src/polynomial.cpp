#include "sds/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "sds/errors.hpp"

namespace sds {

namespace {

constexpr std::size_t kCompensatedDegree = 8;

// Error-free transformations (Knuth TwoSum, FMA-based TwoProduct).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

double horner(std::span<const double> c, double z) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Graillat-Langlois-Louvet compensated Horner.
double compensated_horner(std::span<const double> c, double z) {
  double s = c.back();
  double corr = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    double p, pi, sigma;
    two_prod(s, z, p, pi);
    two_sum(p, c[i], s, sigma);
    corr = corr * z + (pi + sigma);
  }
  return s + corr;
}

double eval_coeffs(std::span<const double> c, double z) {
  if (c.empty()) return 0.0;
  return c.size() - 1 > kCompensatedDegree ? compensated_horner(c, z) : horner(c, z);
}

std::vector<double> derive(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
  return d;
}

}  // namespace

ProfilePolynomial::ProfilePolynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("profile polynomial needs at least one coefficient");
  if (coeffs_.size() > 1 && coeffs_.back() == 0.0)
    throw std::invalid_argument("profile polynomial leading coefficient must be nonzero");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("profile polynomial coefficient is not finite");
}

double ProfilePolynomial::operator()(double z) const { return eval_coeffs(coeffs_, z); }

PolyValue ProfilePolynomial::eval(double z) const {
  const auto d1 = derive(coeffs_);
  const auto d2 = derive(d1);
  return {eval_coeffs(coeffs_, z), eval_coeffs(d1, z), eval_coeffs(d2, z)};
}

ProfilePolynomial ProfilePolynomial::derivative() const {
  auto d = derive(coeffs_);
  while (d.size() > 1 && d.back() == 0.0) d.pop_back();
  return ProfilePolynomial(std::move(d));
}

std::vector<double> ProfilePolynomial::shifted(double origin, double sign) const {
  // Taylor shift by repeated synthetic division, then x -> sign * x.
  std::vector<double> a(coeffs_);
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) a[j - 1] += origin * a[j];
  double s = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    a[j] *= s;
    s *= sign;
  }
  return a;
}

namespace series {

Coeffs truncate(Coeffs a, std::size_t order) {
  a.resize(order + 1, 0.0);
  return a;
}

Coeffs add(const Coeffs& a, const Coeffs& b, std::size_t order) {
  Coeffs r(order + 1, 0.0);
  for (std::size_t i = 0; i <= order; ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return r;
}

Coeffs scale(const Coeffs& a, double s, std::size_t order) {
  Coeffs r(order + 1, 0.0);
  for (std::size_t i = 0; i <= order && i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b, std::size_t order) {
  Coeffs r(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Coeffs divide(const Coeffs& a, const Coeffs& b, std::size_t order) {
  if (b.empty() || b[0] == 0.0) throw DomainError("series division by a series vanishing at the origin");
  Coeffs r(order + 1, 0.0);
  for (std::size_t n = 0; n <= order; ++n) {
    double acc = n < a.size() ? a[n] : 0.0;
    for (std::size_t k = 1; k <= n && k < b.size(); ++k) acc -= b[k] * r[n - k];
    r[n] = acc / b[0];
  }
  return r;
}

Coeffs differentiate(const Coeffs& a) { return derive(a); }

double evaluate(const Coeffs& a, double x) { return eval_coeffs(a, x); }

}  // namespace series

}  // namespace sds
