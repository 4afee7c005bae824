#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qsphere/spectral.hpp"

using namespace qsphere;

TEST_SUITE("spectral") {

TEST_CASE("multiplicities, closed forms") {
  // level 1 carries the coordinates themselves
  for (int N = 2; N <= 8; ++N) {
    for (const auto kind : {FamilyKind::Classical, FamilyKind::HalfLiberated, FamilyKind::Free}) {
      CHECK(multiplicity({kind, N}, 0) == 1);
      CHECK(multiplicity({kind, N}, 1) == N);
    }
  }
  // classical N = 3: 2s + 1; N = 4: (s+1)^2
  for (int s = 0; s <= 30; ++s) {
    CHECK(multiplicity({FamilyKind::Classical, 3}, s) == 2 * s + 1);
    CHECK(multiplicity({FamilyKind::Classical, 4}, s) == static_cast<long>(s + 1) * (s + 1));
  }
  // free: Chebyshev values
  for (int N = 2; N <= 6; ++N) {
    for (int s = 0; s <= 20; ++s) {
      CHECK(multiplicity({FamilyKind::Free, N}, s) == chebyshev_u_at(s, N));
    }
  }
  // half-liberated N = 3: (m+1)^3 at s = 2m, (m+1)(m+2)(2m+3)/2 at s = 2m+1
  for (int m = 0; m <= 10; ++m) {
    const long mm = m;
    CHECK(multiplicity({FamilyKind::HalfLiberated, 3}, 2 * m) == (mm + 1) * (mm + 1) * (mm + 1));
    CHECK(multiplicity({FamilyKind::HalfLiberated, 3}, 2 * m + 1) ==
          (mm + 1) * (mm + 2) * (2 * mm + 3) / 2);
  }
  CHECK(multiplicity({FamilyKind::HalfLiberated, 3}, 3) == 15);
  // N = 2: all three models coincide with the circle, m_s = s + 1 for s >= 1
  for (int s = 1; s <= 30; ++s) {
    CHECK(multiplicity({FamilyKind::HalfLiberated, 2}, s) == s + 1);
    CHECK(multiplicity({FamilyKind::Free, 2}, s) == s + 1);
    CHECK(multiplicity({FamilyKind::Classical, 2}, s) == 2);
  }
}

TEST_CASE("multiplicity growth matches the advertised order") {
  // classical: a polynomial of degree N-2, so (N-1)-th differences vanish
  for (int N = 3; N <= 6; ++N) {
    const Family f{FamilyKind::Classical, N};
    std::vector<Rational> diffs;
    for (int s = 10; s <= 10 + N; ++s) diffs.push_back(Rational(multiplicity(f, s)));
    for (int round = 0; round < N - 1; ++round) {
      for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
      diffs.pop_back();
    }
    for (const auto& d : diffs) CHECK(d == Rational(0));
  }
  // half-liberated: m_s / s^{2N-3} approaches a constant along even levels
  for (int N = 2; N <= 5; ++N) {
    const Family f{FamilyKind::HalfLiberated, N};
    const auto ratio_at = [&](int s) {
      return to_double(Rational(multiplicity(f, s))) / std::pow(s, 2 * N - 3);
    };
    const double r100 = ratio_at(100);
    const double r200 = ratio_at(200);
    CHECK(r100 > 0.0);
    CHECK(std::fabs(r200 / r100 - 1.0) < 0.2);
  }
  // free: m_{s+1}/m_s tends to the larger Chebyshev root
  for (int N = 3; N <= 6; ++N) {
    const double root = (N + std::sqrt(static_cast<double>(N) * N - 4)) / 2.0;
    const double r = to_double(Rational(chebyshev_u_at(61, N)) / Rational(chebyshev_u_at(60, N)));
    CHECK(std::fabs(r / root - 1.0) < 0.01);
  }
}

TEST_CASE("spectrum assembles levels in order") {
  const Generator g{{FamilyKind::Free, 2}, {Rational(1), {}}};
  const auto entries = spectrum(g, 21);
  REQUIRE(entries.size() == 22);
  const long expected[] = {0,   -1,  -4,  -7,  -12, -17, -24, -31, -40, -49, -60,
                           -71, -84, -97, -112, -127, -144, -161, -180, -199, -220, -241};
  for (int s = 0; s <= 21; ++s) {
    CHECK(entries[static_cast<std::size_t>(s)].s == s);
    CHECK(entries[static_cast<std::size_t>(s)].multiplicity == (s == 0 ? 1 : s + 1));
    CHECK(entries[static_cast<std::size_t>(s)].lambda == Rational(expected[s]));
  }
}

TEST_CASE("zeta partial sums: convergent exponent stabilizes") {
  const Generator g = laplace({FamilyKind::Classical, 3});
  // d = 2 here, so z = 2.5 converges: successive dyadic increments shrink
  const double s1 = zeta_partial(g, 2.5, 1000000);
  const double s2 = zeta_partial(g, 2.5, 2000000);
  const double s4 = zeta_partial(g, 2.5, 4000000);
  CHECK(s1 < s2);
  CHECK(s2 < s4);
  CHECK(s2 - s1 > s4 - s2);
  CHECK(s4 - s2 < 1e-3);
}

TEST_CASE("zeta partial sums: divergent exponent keeps growing") {
  const Generator g = laplace({FamilyKind::Classical, 3});
  // z = 1.5 < d: terms ~ s^{-1/2}, partial sums ~ sqrt(smax)
  const double s1 = zeta_partial(g, 1.5, 1000000);
  const double s4 = zeta_partial(g, 1.5, 4000000);
  CHECK(s1 > 2500.0);
  CHECK(s4 > 1.8 * s1);
}

TEST_CASE("zeta rejects degenerate generators") {
  const Generator g{{FamilyKind::Classical, 3}, {Rational(0), {}}};
  CHECK_THROWS_WITH_AS(zeta_partial(g, 2.5, 10), doctest::Contains("degenerate generator"),
                       std::domain_error);
  CHECK_THROWS_AS(zeta_partial(laplace({FamilyKind::Classical, 3}), 2.5, 0),
                  std::invalid_argument);
}

TEST_CASE("heat trace partials") {
  const Generator g = laplace({FamilyKind::Classical, 3});
  // smax = 2 by hand: 1 + 3 e^{-2t} + 5 e^{-6t} at t = 1
  const long double expected = 1.0L + 3.0L * std::exp(-2.0L) + 5.0L * std::exp(-6.0L);
  CHECK(std::fabs(heat_trace_partial(g, Rational(1), 2) - expected) < 1e-15L);
  CHECK(heat_trace_partial(g, Rational(1), 0) == 1.0L);
  // tail is positive and decreasing in t
  const long double t1 = heat_trace_partial(g, Rational(1), 50);
  const long double t2 = heat_trace_partial(g, Rational(2), 50);
  const long double t9 = heat_trace_partial(g, Rational(9), 50);
  CHECK(t1 > t2);
  CHECK(t2 > t9);
  CHECK(t9 > 1.0L);
  CHECK(t9 - 1.0L < 1e-6L);
  CHECK_THROWS_WITH_AS(heat_trace_partial(g, Rational(0), 3), doctest::Contains("time t"),
                       std::invalid_argument);
}

TEST_CASE("spectral dimension of the Laplace generators") {
  // classical: d = N - 1
  for (int N = 3; N <= 6; ++N) {
    const auto d = spectral_dimension(laplace({FamilyKind::Classical, N}));
    CHECK(d.finite);
    CHECK(d.method == DimensionMethod::ExactOrder);
    CHECK(d.value == Rational(N - 1));
    CHECK(d.warning.empty());
    CHECK(std::fabs(d.regression_estimate - (N - 1)) / (N - 1) < 0.05);
  }
  // half-liberated: d = 2(N - 1)
  for (int N = 2; N <= 5; ++N) {
    const auto d = spectral_dimension(laplace({FamilyKind::HalfLiberated, N}));
    CHECK(d.finite);
    CHECK(d.value == Rational(2 * (N - 1)));
    CHECK(d.method == DimensionMethod::ExactOrder);
  }
  // free N = 2: the circle again, d = 2
  const auto d2 = spectral_dimension(laplace({FamilyKind::Free, 2}));
  CHECK(d2.finite);
  CHECK(d2.value == Rational(2));
  // free N >= 3: exponential multiplicity growth, no finite dimension
  for (int N = 3; N <= 5; ++N) {
    const auto d = spectral_dimension(laplace({FamilyKind::Free, N}));
    CHECK(!d.finite);
    CHECK(d.method == DimensionMethod::ExactOrder);
  }
}

TEST_CASE("spectral dimension is scale invariant") {
  LevyMeasure nu;
  nu.pieces.push_back({ratio(-1, 2), ratio(1, 2), Poly::constant(Rational(1))});
  LevyMeasure nu2 = nu;
  nu2.pieces[0].density = Rational(2) * nu2.pieces[0].density;
  const Generator g{{FamilyKind::Classical, 4}, {Rational(1), nu}};
  const Generator g2{{FamilyKind::Classical, 4}, {Rational(2), nu2}};
  const auto d = spectral_dimension(g);
  const auto d2 = spectral_dimension(g2);
  CHECK(d.value == d2.value);
  CHECK(d.finite);
  CHECK(d.method == d2.method);
}

TEST_CASE("drift-dominated jump pair keeps the exact classification") {
  const Generator g{{FamilyKind::Classical, 3},
                    {Rational(1), {{{ratio(1, 2), Rational(1)}}, {}}}};
  const auto d = spectral_dimension(g);
  CHECK(d.finite);
  CHECK(d.method == DimensionMethod::ExactOrder);
  CHECK(d.value == Rational(2));
  CHECK(d.warning.empty());
}

TEST_CASE("jump-dominated pair falls back to regression") {
  // tiny drift, unit atom at 0: eigenvalues flatten toward a constant, so the
  // regressed order sits far from 2 and the exact label cannot be trusted
  const Generator g{{FamilyKind::Classical, 3},
                    {ratio(1, 1000000), {{{Rational(0), Rational(1)}}, {}}}};
  const auto d = spectral_dimension(g);
  CHECK(d.method == DimensionMethod::NumericRegression);
  CHECK(!d.warning.empty());
  CHECK(d.finite);
}

TEST_CASE("spectral dimension requires positive drift") {
  const Generator g{{FamilyKind::Classical, 3}, {Rational(0), {{{Rational(0), Rational(1)}}, {}}}};
  CHECK_THROWS_WITH_AS(spectral_dimension(g), doctest::Contains("drift b"),
                       std::invalid_argument);
}

}  // TEST_SUITE
