#include "qsphere/family.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "qsphere/measures.hpp"

namespace qsphere {

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Classical: return "classical";
    case FamilyKind::HalfLiberated: return "half-liberated";
    case FamilyKind::Free: return "free";
  }
  return "?";
}

void validate_family(const Family& f) {
  if (f.N < 2) {
    throw std::invalid_argument("ambient dimension N must be >= 2 (got " + std::to_string(f.N) +
                                ")");
  }
}

Poly chebyshev_u(int s) {
  if (s < 0) throw std::invalid_argument("Chebyshev index must be >= 0");
  Poly prev = Poly::constant(Rational(1));
  if (s == 0) return prev;
  Poly cur = Poly::monomial(1);
  const Poly x = Poly::monomial(1);
  for (int k = 1; k < s; ++k) {
    Poly next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Int chebyshev_u_at(int s, int N) {
  if (s < 0) throw std::invalid_argument("Chebyshev index must be >= 0");
  Int prev = 1;
  if (s == 0) return prev;
  Int cur = N;
  for (int k = 1; k < s; ++k) {
    Int next = N * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Int a_coeff_int(int N, int s) {
  if (s < 0) throw std::invalid_argument("a_s index must be >= 0");
  // a_{r} = U_r(N) - a_{r-1}, a_0 = 1; keeps the alternating sum incremental.
  Int a = 1;
  Int u_prev = 1;  // U_0(N)
  Int u_cur = N;   // U_1(N)
  for (int r = 1; r <= s; ++r) {
    a = u_cur - a;
    Int next = N * u_cur - u_prev;
    u_prev = std::move(u_cur);
    u_cur = std::move(next);
  }
  return a;
}

Rational a_coeff(int N, int s) { return Rational(a_coeff_int(N, s)); }

Rational omega(int N, int l) {
  if (N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  if (l < 0) throw std::invalid_argument("omega index must be >= 0");
  const long num = static_cast<long>((l + 2) / 2) * (N - 1 + l / 2);
  const long den = static_cast<long>(N + l) * (N + l - 1);
  return ratio(num, den);
}


Poly star_p(int N, int s) {
  if (N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  if (s < 0) throw std::invalid_argument("polynomial index must be >= 0");
  std::vector<Rational> c(static_cast<std::size_t>(s) + 1, Rational(0));
  if (s % 2 == 0) {
    const int k = s / 2;
    // P_2k = sum_r (-1)^{k+r} C(k,r)^2 C(N+2k-2, k-r)^{-1} x^{2r}
    for (int r = 0; r <= k; ++r) {
      Int num = binomial_int(k, r);
      num *= num;
      if ((k + r) % 2 != 0) num = -num;
      c[static_cast<std::size_t>(2 * r)] = Rational(num) / Rational(binomial_int(N + 2 * k - 2, k - r));
    }
  } else {
    const int k = (s - 1) / 2;
    // P_{2k+1} = sum_r (-1)^{k+r} C(k,r) C(k+1,r+1) C(N+2k-1, k-r)^{-1} x^{2r+1}
    for (int r = 0; r <= k; ++r) {
      Int num = binomial_int(k, r) * binomial_int(k + 1, r + 1);
      if ((k + r) % 2 != 0) num = -num;
      c[static_cast<std::size_t>(2 * r + 1)] =
          Rational(num) / Rational(binomial_int(N + 2 * k - 1, k - r));
    }
  }
  return Poly(std::move(c));
}

namespace {

// Memoized normalized families, keyed by (kind, N); the vector holds q_0..q_d.
std::map<std::pair<int, int>, std::vector<Poly>>& family_cache() {
  static std::map<std::pair<int, int>, std::vector<Poly>> cache;
  return cache;
}

std::mutex& family_mutex() {
  static std::mutex m;
  return m;
}

Poly normalized_at_one(const Poly& p) {
  const Rational v = p.eval(Rational(1));
  if (v == 0) throw std::domain_error("polynomial vanishes at 1, cannot normalize");
  return (Rational(1) / v) * p;
}

// Extends the cached list for f up to degree s.
void extend_family(const Family& f, int s, std::vector<Poly>& qs) {
  if (static_cast<int>(qs.size()) > s) return;
  if (f.kind == FamilyKind::Classical) {
    // Gram-Schmidt against the exact moments, then value-1 normalization.
    const auto monic = gram_schmidt(MomentFunctional{f}, s);
    qs.clear();
    qs.reserve(monic.size());
    for (const auto& p : monic) qs.push_back(normalized_at_one(p));
    return;
  }
  if (qs.empty()) qs.push_back(Poly::constant(Rational(1)));
  if (qs.size() == 1 && s >= 1) qs.push_back(Poly::monomial(1));
  const Poly x = Poly::monomial(1);
  if (f.kind == FamilyKind::HalfLiberated) {
    // P_t = x P_{t-1} - omega_{t-2} P_{t-2}; q_t = P_t / P_t(1).
    // Rebuilt un-normalized to keep the recurrence exact.
    std::vector<Poly> p{Poly::constant(Rational(1)), Poly::monomial(1)};
    for (int t = 2; t <= s; ++t) p.push_back(x * p[t - 1] - omega(f.N, t - 2) * p[t - 2]);
    for (int t = static_cast<int>(qs.size()); t <= s; ++t) qs.push_back(normalized_at_one(p[t]));
    return;
  }
  // Free: a_{t+1} q_{t+2} = U_{t+1}(N) x q_{t+1} - a_t q_t, already normalized
  // at 1 because a_{t+1} = U_{t+1}(N) - a_t.
  for (int t = static_cast<int>(qs.size()); t <= s; ++t) {
    const Rational u = Rational(chebyshev_u_at(t - 1, f.N));
    const Rational at = a_coeff(f.N, t - 2);
    const Rational at1 = a_coeff(f.N, t - 1);
    qs.push_back((Rational(1) / at1) * (u * (x * qs[t - 1]) - at * qs[t - 2]));
  }
}

}  // namespace

Poly family_q(const Family& f, int s) {
  validate_family(f);
  if (s < 0) throw std::invalid_argument("polynomial index must be >= 0");
  std::lock_guard<std::mutex> lock(family_mutex());
  auto& qs = family_cache()[{static_cast<int>(f.kind), f.N}];
  extend_family(f, s, qs);
  return qs[static_cast<std::size_t>(s)];
}

Rational q_prime_at_one(const Family& f, int s) {
  validate_family(f);
  if (s < 0) throw std::invalid_argument("polynomial index must be >= 0");
  switch (f.kind) {
    case FamilyKind::Classical:
      return ratio(static_cast<long>(s) * (s + f.N - 2), f.N - 1);
    case FamilyKind::HalfLiberated: {
      if (s % 2 == 0) {
        const long k = s / 2;
        return ratio(2 * k * (f.N + k - 1), f.N - 1);
      }
      const long k = (s - 1) / 2;
      return ratio((2 * k + 1) * f.N + 2 * k * k - 1, f.N - 1);
    }
    case FamilyKind::Free: {
      // sum_{r=0}^{s-1} (U_0(N)+...+U_r(N)) / a_r
      Rational total(0);
      Int u_prev = 1, u_cur = f.N;  // U_0, U_1
      Int partial = 0;
      Int a = 1;
      for (int r = 0; r < s; ++r) {
        if (r == 0) {
          partial = 1;
        } else {
          a = u_cur - a;  // now a_r
          partial += u_cur;
          Int next = f.N * u_cur - u_prev;
          u_prev = std::move(u_cur);
          u_cur = std::move(next);
        }
        total += Rational(partial) / Rational(a);
      }
      return total;
    }
  }
  throw std::logic_error("unreachable family kind");
}

}  // namespace qsphere
