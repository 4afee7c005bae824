#include "qsphere/levy.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "qsphere/measures.hpp"

namespace qsphere {

namespace {

constexpr mpfr_prec_t kExpPrecision = 96;  // significand bits for exp evaluation

// exp(q) rounded to long double through a 96-bit intermediate.
long double exp_rational(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, kExpPrecision);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  const long double out = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

}  // namespace

void validate_pair(const LevyPair& pair) {
  if (pair.b < 0) throw std::invalid_argument("drift b must be >= 0");
  validate_levy(pair.nu, Rational(1));
}

Rational psi(const LevyPair& pair, const Poly& p) {
  validate_pair(pair);
  Rational value = -pair.b * p.derivative().eval(Rational(1));
  if (!pair.nu.is_zero()) {
    const Poly shifted = p - Poly::constant(p.eval(Rational(1)));
    value -= levy_integrate(pair.nu, shifted.div_by_x_minus_one());
  }
  return value;
}

Rational eigenvalue(const Generator& g, int s) {
  validate_family(g.family);
  validate_pair(g.pair);
  if (s < 0) throw std::invalid_argument("level s must be >= 0");
  if (s == 0) return Rational(0);
  if (g.pair.nu.is_zero()) return -g.pair.b * q_prime_at_one(g.family, s);
  return psi(g.pair, family_q(g.family, s));
}

Generator laplace(const Family& f) {
  validate_family(f);
  return Generator{f, LevyPair{Rational(f.N - 1), LevyMeasure{}}};
}

std::vector<long double> heat_eigenvalues(const Generator& g, const Rational& t, int smax) {
  if (t < 0) throw std::invalid_argument("time t must be >= 0");
  if (smax < 0) throw std::invalid_argument("smax must be >= 0");
  std::vector<long double> out;
  out.reserve(static_cast<std::size_t>(smax) + 1);
  for (int s = 0; s <= smax; ++s) {
    if (s == 0) {
      out.push_back(1.0L);
      continue;
    }
    out.push_back(exp_rational(t * eigenvalue(g, s)));
  }
  return out;
}

Rational central_eigenvalue(int N, const Rational& b, const LevyMeasure& nuN, int s) {
  if (N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  if (b < 0) throw std::invalid_argument("drift b must be >= 0");
  validate_levy(nuN, Rational(N));
  if (s < 0) throw std::invalid_argument("level s must be >= 0");
  if (s == 0) return Rational(0);
  const Poly U = chebyshev_u(s);
  const Rational UN = U.eval(Rational(N));
  Rational value = -b * U.derivative().eval(Rational(N)) / UN;
  if (!nuN.is_zero()) {
    const Poly quot = (U - Poly::constant(UN)).div_by_x_minus(Rational(N));
    value -= levy_integrate(nuN, quot) / UN;
  }
  return value;
}

SchoenbergCheck is_conditionally_positive(const LevyPair& pair, int degree) {
  validate_pair(pair);
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  const std::size_t n = static_cast<std::size_t>(degree);
  std::vector<Poly> basis;  // (x-1)x^j spans polynomials vanishing at 1
  basis.reserve(n);
  const Poly xm1 = Poly::monomial(1) - Poly::constant(Rational(1));
  for (std::size_t j = 0; j < n; ++j) basis.push_back(xm1 * Poly::monomial(static_cast<int>(j)));
  SchoenbergCheck check;
  check.witness.assign(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const Rational v = psi(pair, basis[j] * basis[k]);
      check.witness[j][k] = v;
      check.witness[k][j] = v;
    }
  }
  // Exact LDL^T: psd iff every pivot is >= 0 and zero pivots head zero rows.
  RationalMatrix m = check.witness;
  check.positive = true;
  for (std::size_t i = 0; i < n && check.positive; ++i) {
    if (m[i][i] < 0) {
      check.positive = false;
      break;
    }
    if (m[i][i] == 0) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m[i][j] != 0) {
          check.positive = false;
          break;
        }
      }
      continue;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (m[r][i] == 0) continue;
      const Rational f = m[r][i] / m[i][i];
      for (std::size_t c = i; c < n; ++c) m[r][c] -= f * m[i][c];
    }
  }
  return check;
}

}  // namespace qsphere
