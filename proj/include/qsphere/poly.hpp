#pragma once

#include <string>
#include <vector>

#include "qsphere/rational.hpp"

namespace qsphere {

// Dense univariate polynomial over Rational, ascending powers: coeffs()[k] is
// the coefficient of x^k. The zero polynomial is the empty list; otherwise the
// last entry is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly monomial(int degree, const Rational& c = Rational(1));

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero

  // Coefficient of x^k; zero outside the stored range.
  Rational coeff(int k) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& p, const Poly& q);
  friend Poly operator-(const Poly& p, const Poly& q);
  friend Poly operator*(const Poly& p, const Poly& q);
  friend Poly operator*(const Rational& c, const Poly& p);
  friend bool operator==(const Poly& p, const Poly& q) { return p.coeffs_ == q.coeffs_; }

  Poly derivative() const;

  // Antiderivative with zero constant term.
  Poly antiderivative() const;

  // Horner evaluation, exact.
  Rational eval(const Rational& x) const;

  // Exact quotient by (x - c); requires eval(c) = 0, else throws
  // std::domain_error. Synthetic division, no remainder kept.
  Poly div_by_x_minus(const Rational& c) const;
  Poly div_by_x_minus_one() const;

  // Human-readable form, e.g. "1/4 x + 1/4 x^3"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace qsphere
