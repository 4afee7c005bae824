#include "qsphere/poly.hpp"

#include <stdexcept>
#include <utility>

namespace qsphere {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::monomial(int degree, const Rational& c) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Poly(std::move(v));
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Poly Poly::operator-() const {
  std::vector<Rational> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
  return Poly(std::move(v));
}

Poly operator+(const Poly& p, const Poly& q) {
  std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) v[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) v[i] += q.coeffs_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

Poly operator*(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly();
  std::vector<Rational> v(p.coeffs_.size() + q.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    if (p.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
  }
  return Poly(std::move(v));
}

Poly operator*(const Rational& c, const Poly& p) {
  std::vector<Rational> v(p.coeffs_.size());
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) v[i] = c * p.coeffs_[i];
  return Poly(std::move(v));
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = Rational(static_cast<long>(k)) * coeffs_[k];
  return Poly(std::move(v));
}

Poly Poly::antiderivative() const {
  if (coeffs_.empty()) return Poly();
  std::vector<Rational> v(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    v[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
  }
  return Poly(std::move(v));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::div_by_x_minus(const Rational& c) const {
  if (is_zero()) return Poly();
  // Synthetic division: p(x) = (x - c) g(x) + p(c); requires p(c) = 0.
  std::vector<Rational> g(coeffs_.size() - 1, Rational(0));
  Rational carry(0);
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    carry = coeffs_[k] + c * carry;
    g[k - 1] = carry;
  }
  Rational remainder = coeffs_[0] + c * carry;
  if (remainder != 0) {
    throw std::domain_error("polynomial does not vanish at " + format_rational(c) +
                            ": remainder " + format_rational(remainder));
  }
  return Poly(std::move(g));
}

Poly Poly::div_by_x_minus_one() const { return div_by_x_minus(Rational(1)); }

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += format_rational(mag);
    if (k == 1) {
      out += unit ? "x" : " x";
    } else if (k > 1) {
      out += (unit ? "x^" : " x^") + std::to_string(k);
    }
  }
  return out;
}

}  // namespace qsphere
