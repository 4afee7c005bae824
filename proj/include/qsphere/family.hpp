#pragma once

#include <string>

#include "qsphere/poly.hpp"

namespace qsphere {

// The three spheres: classical S^{N-1}, half-liberated S^{N-1}_*, free
// S^{N-1}_+. For N = 2 the half-liberated and free spheres coincide.
enum class FamilyKind { Classical, HalfLiberated, Free };

struct Family {
  FamilyKind kind = FamilyKind::Classical;
  int N = 2;  // ambient dimension, >= 2
};

const char* family_name(FamilyKind kind);

// Throws std::invalid_argument unless N >= 2.
void validate_family(const Family& f);

// Chebyshev polynomials of the second kind: U_0 = 1, U_1 = x,
// U_{s+1} = x U_s - U_{s-1}.
Poly chebyshev_u(int s);

// U_s(N) by the integer recurrence.
Int chebyshev_u_at(int s, int N);

// a_s = sum_{k=0..s} (-1)^{s+k} U_k(N); satisfies a_{s+1} = U_{s+1}(N) - a_s.
Int a_coeff_int(int N, int s);
Rational a_coeff(int N, int s);

// omega_l = floor((l+2)/2) * (N - 1 + floor(l/2)) / ((N+l)(N+l-1)), the
// recurrence weight of the half-liberated family.
Rational omega(int N, int l);

// Un-normalized half-liberated polynomial P_s from the closed-form
// coefficient sums; equals the omega-recurrence output exactly.
Poly star_p(int N, int s);

// Normalized eigenpolynomial q_s with q_s(1) = 1, parity of s; q_0 = 1,
// q_1 = x for every family. Classical polynomials are built by Gram-Schmidt
// against the exact moment functional, half-liberated and free ones by their
// three-term recurrences. Results are memoized per (kind, N).
Poly family_q(const Family& f, int s);

// q_s'(1) from the closed forms:
//   Classical       s(s+N-2)/(N-1)
//   HalfLiberated   2k(N+k-1)/(N-1) at s = 2k, ((2k+1)N+2k^2-1)/(N-1) at s = 2k+1
//   Free            sum_{r=0}^{s-1} (sum_{k<=r} U_k(N)) / a_r
Rational q_prime_at_one(const Family& f, int s);

}  // namespace qsphere
