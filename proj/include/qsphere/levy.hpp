#pragma once

#include <vector>

#include "qsphere/family.hpp"
#include "qsphere/measures.hpp"
#include "qsphere/poly.hpp"

namespace qsphere {

// Levy pair (b, nu): nonnegative drift plus a finite positive jump measure on
// [-1, 1) classifying the generating functionals on polynomials in u11.
struct LevyPair {
  Rational b;
  LevyMeasure nu;
};

// Throws std::invalid_argument unless b >= 0 and nu is a valid measure on
// [-1, 1] with no atom at 1.
void validate_pair(const LevyPair& pair);

struct Generator {
  Family family;
  LevyPair pair;
};

// Generating functional, jump kernel (p(x) - p(1))/(1 - x):
//   psi(p) = -b p'(1) - levy_integrate(nu, g),  g = (p - p(1))/(x - 1).
// This is the sign under which psi is conditionally positive
// (is_conditionally_positive) and Markov eigenvalues are <= 0.
Rational psi(const LevyPair& pair, const Poly& p);

// lambda_s = psi(q_s); lambda_0 = 0. When nu = 0 the value is
// -b q_s'(1), taken from the closed forms.
Rational eigenvalue(const Generator& g, int s);

// The Laplace operator: (b, nu) = (N-1, 0); classical eigenvalues -s(s+N-2).
Generator laplace(const Family& f);

// exp(t lambda_s) for s = 0..smax. Exponentials are evaluated at 96-bit
// precision via MPFR and returned as long double (>= 60-bit significand on
// this target); entry 0 is exactly 1.
std::vector<long double> heat_eigenvalues(const Generator& g, const Rational& t, int smax);

// Central-semigroup eigenvalue for a measure nuN on [-N, N):
//   lambda_s = -b U_s'(N)/U_s(N) + (1/U_s(N)) * int (U_s(x)-U_s(N))/(N-x) dnuN,
// with the quotient taken as the exact synthetic division by (x - N). An atom
// at N is rejected (fold it into b).
Rational central_eigenvalue(int N, const Rational& b, const LevyMeasure& nuN, int s);

// Finite-degree Schoenberg check: M_{jk} = psi(((x-1)x^j)((x-1)x^k)) for
// 0 <= j,k < degree must be positive semidefinite. Decided exactly by
// symmetric elimination with zero-pivot handling (a zero diagonal pivot is
// accepted only when its whole row is zero). M is returned as witness.
struct SchoenbergCheck {
  bool positive = false;
  RationalMatrix witness;
};

SchoenbergCheck is_conditionally_positive(const LevyPair& pair, int degree);

}  // namespace qsphere
