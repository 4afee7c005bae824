#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qsphere/haar.hpp"
#include "qsphere/measures.hpp"

using namespace qsphere;

namespace {

Word make_word(std::vector<std::pair<int, int>> letters, FamilyKind model, int N) {
  Word w;
  w.letters = std::move(letters);
  w.model = model;
  w.N = N;
  return w;
}

Word rotated(const Word& w, std::size_t by) {
  Word r = w;
  std::rotate(r.letters.begin(), r.letters.begin() + static_cast<std::ptrdiff_t>(by),
              r.letters.end());
  return r;
}

}  // namespace

TEST_SUITE("haar") {

TEST_CASE("pairing counts per class") {
  const std::size_t all[] = {1, 3, 15, 105};        // (2k-1)!!
  const std::size_t balanced[] = {1, 2, 6, 24, 120};  // k!
  const std::size_t catalan[] = {1, 2, 5, 14, 42, 132};
  for (int k = 1; k <= 4; ++k) {
    CHECK(enumerate_pairings(k, PairingVariant::All).size() == all[k - 1]);
  }
  for (int k = 1; k <= 5; ++k) {
    CHECK(enumerate_pairings(k, PairingVariant::Balanced).size() == balanced[k - 1]);
  }
  for (int k = 1; k <= 6; ++k) {
    CHECK(enumerate_pairings(k, PairingVariant::NonCrossing).size() == catalan[k - 1]);
  }
  // hard stops where exact inversion would blow up
  CHECK_THROWS_WITH_AS(enumerate_pairings(5, PairingVariant::All),
                       doctest::Contains("length cap"), std::length_error);
  CHECK_THROWS_AS(enumerate_pairings(6, PairingVariant::Balanced), std::length_error);
  CHECK_THROWS_AS(enumerate_pairings(7, PairingVariant::NonCrossing), std::length_error);
}

TEST_CASE("pairings are well-formed and distinct") {
  for (const auto variant :
       {PairingVariant::All, PairingVariant::Balanced, PairingVariant::NonCrossing}) {
    const auto ps = enumerate_pairings(3, variant);
    std::set<Pairing> seen;
    for (const auto& p : ps) {
      CHECK(p.size() == 3);
      std::set<int> points;
      for (const auto& [a, b] : p) {
        CHECK(a < b);
        points.insert(a);
        points.insert(b);
      }
      CHECK(points.size() == 6);
      CHECK(*points.rbegin() == 5);
      CHECK(seen.insert(p).second);
    }
  }
}

TEST_CASE("balanced pairs join odd and even positions") {
  for (const auto& p : enumerate_pairings(4, PairingVariant::Balanced)) {
    for (const auto& [a, b] : p) CHECK((a + b) % 2 == 1);
  }
}

TEST_CASE("non-crossing pairs never interleave") {
  for (const auto& p : enumerate_pairings(4, PairingVariant::NonCrossing)) {
    for (const auto& [a, b] : p) {
      for (const auto& [c, d] : p) {
        CHECK(!(a < c && c < b && b < d));
      }
    }
  }
}

TEST_CASE("loop counting") {
  const auto ps = enumerate_pairings(3, PairingVariant::All);
  for (const auto& p : ps) {
    CHECK(loops(p, p) == 3);
    for (const auto& q : ps) {
      const int l = loops(p, q);
      CHECK(l >= 1);
      CHECK(l <= 3);
      CHECK(l == loops(q, p));
    }
  }
  // two k=2 pairings meeting in a single cycle
  const Pairing a = {{0, 1}, {2, 3}};
  const Pairing b = {{0, 3}, {1, 2}};
  CHECK(loops(a, b) == 1);
  CHECK(loops(a, a) == 2);
}

TEST_CASE("weingarten matrix, frozen k = 2 non-crossing") {
  // G = [[N^2, N], [N, N^2]] inverts to [[N^2, -N], [-N, N^2]]/(N^4 - N^2)
  for (const int N : {3, 4, 5}) {
    const auto& wg = weingarten_matrix(2, PairingVariant::NonCrossing, N);
    const long n = N;
    const Rational den(n * n * n * n - n * n);
    REQUIRE(wg.size() == 2);
    CHECK(wg[0][0] == Rational(n * n) / den);
    CHECK(wg[0][1] == Rational(-n) / den);
    CHECK(wg[1][0] == Rational(-n) / den);
    CHECK(wg[1][1] == Rational(n * n) / den);
  }
}

TEST_CASE("weingarten matrix inverts the Gram matrix") {
  for (const auto variant :
       {PairingVariant::All, PairingVariant::Balanced, PairingVariant::NonCrossing}) {
    const int N = 4;
    const auto ps = enumerate_pairings(3, variant);
    const auto& wg = weingarten_matrix(3, variant, N);
    const std::size_t n = ps.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational acc(0);
        for (std::size_t l = 0; l < n; ++l) {
          Int g(1);
          for (int c = 0; c < loops(ps[i], ps[l]); ++c) g *= N;
          acc += Rational(g) * wg[l][j];
        }
        CHECK(acc == (i == j ? Rational(1) : Rational(0)));
      }
    }
  }
}

TEST_CASE("singular Gram matrices are reported, not inverted") {
  CHECK_THROWS_WITH_AS(weingarten_matrix(3, PairingVariant::Balanced, 2),
                       doctest::Contains("singular Gram"), std::domain_error);
  CHECK_THROWS_WITH_AS(weingarten_matrix(3, PairingVariant::All, 2),
                       doctest::Contains("singular Gram"), std::domain_error);
  // non-crossing Gram matrices stay invertible even at N = 2
  CHECK_NOTHROW(weingarten_matrix(4, PairingVariant::NonCrossing, 2));
  CHECK_NOTHROW(weingarten_matrix(6, PairingVariant::NonCrossing, 2));
}

TEST_CASE("free golden moments") {
  for (int N = 3; N <= 6; ++N) {
    CHECK(haar_moment(make_word({{2, 2}, {2, 2}}, FamilyKind::Free, N)) == ratio(1, N));
    CHECK(haar_moment(make_word({{1, 1}, {1, 1}, {2, 2}, {2, 2}}, FamilyKind::Free, N)) ==
          ratio(1, static_cast<long>(N) * N - 1));
    for (int k = 1; k <= 3; ++k) {
      std::vector<std::pair<int, int>> letters(static_cast<std::size_t>(k), {1, 1});
      letters.push_back({2, 2});
      letters.push_back({1, 1});
      letters.push_back({2, 2});
      CHECK(haar_moment(make_word(letters, FamilyKind::Free, N)) == Rational(0));
    }
  }
}

TEST_CASE("odd words vanish, empty word is 1") {
  for (const auto kind : {FamilyKind::Classical, FamilyKind::HalfLiberated, FamilyKind::Free}) {
    CHECK(haar_moment(make_word({}, kind, 3)) == Rational(1));
    CHECK(haar_moment(make_word({{1, 2}}, kind, 3)) == Rational(0));
    CHECK(haar_moment(make_word({{1, 1}, {2, 2}, {3, 3}}, kind, 3)) == Rational(0));
  }
}

TEST_CASE("haar moments of u11 powers match the moment functional") {
  for (int N = 2; N <= 5; ++N) {
    for (const auto kind : {FamilyKind::Classical, FamilyKind::HalfLiberated, FamilyKind::Free}) {
      const MomentFunctional mf{Family{kind, N}};
      const int kcap = kind == FamilyKind::Classical ? 3 : 4;
      for (int k = 1; k <= kcap; ++k) {
        if (kind != FamilyKind::Free && N < k) continue;  // Gram matrix singular below N = k
        std::vector<std::pair<int, int>> letters(static_cast<std::size_t>(2 * k), {1, 1});
        CHECK(haar_moment(make_word(letters, kind, N)) == moment(mf, 2 * k));
      }
    }
  }
}

TEST_CASE("haar state is tracial") {
  const std::vector<Word> words = {
      make_word({{1, 1}, {1, 2}, {2, 1}, {1, 2}, {1, 1}, {2, 1}}, FamilyKind::Classical, 3),
      make_word({{1, 2}, {2, 3}, {1, 2}, {3, 3}, {2, 1}, {1, 1}}, FamilyKind::HalfLiberated, 3),
      make_word({{1, 2}, {2, 3}, {1, 2}, {3, 3}, {2, 1}, {1, 1}}, FamilyKind::Free, 3),
      make_word({{3, 1}, {2, 2}, {3, 1}, {1, 3}, {2, 2}, {1, 3}}, FamilyKind::Free, 4),
  };
  for (const auto& w : words) {
    const Rational base = haar_moment(w);
    for (std::size_t r = 1; r < w.letters.size(); ++r) {
      CHECK(haar_moment(rotated(w, r)) == base);
    }
  }
  // length 8, classical: exercises the 105-pairing Gram inversion
  const Word w8 =
      make_word({{1, 1}, {1, 2}, {2, 1}, {3, 4}, {1, 2}, {3, 4}, {2, 1}, {1, 1}},
                FamilyKind::Classical, 4);
  const Rational base8 = haar_moment(w8);
  for (std::size_t r = 1; r < 8; ++r) {
    CHECK(haar_moment(rotated(w8, r)) == base8);
  }
}

TEST_CASE("phi is not tracial but ebi matches the closed form") {
  for (const auto kind : {FamilyKind::Free, FamilyKind::HalfLiberated}) {
    for (const int N : {3, 4, 5}) {
      const Word w = make_word({{1, 1}, {2, 2}, {2, 2}}, kind, N);
      const Word rot = make_word({{2, 2}, {1, 1}, {2, 2}}, kind, N);
      const long d = N - 1;
      // E_bi(u11 u22^2) = ((N-2) x + x^3)/(N-1)^2
      CHECK(ebi(w, 3) ==
            Poly({Rational(0), ratio(N - 2, d * d), Rational(0), ratio(1, d * d)}));
      CHECK(phi(w) == ratio(1, d));
      CHECK(phi(rot) == Rational(0));
      CHECK(haar_moment(w) == Rational(0));  // odd length: h sees no difference
      CHECK(haar_moment(rot) == Rational(0));
    }
  }
}

TEST_CASE("ebi of a u11 power is the projection of x^j") {
  // E_bi restricted to polynomials in u11 is the identity up to smax
  const Family f{FamilyKind::Free, 3};
  const Word w = make_word({{1, 1}, {1, 1}}, FamilyKind::Free, 3);
  const Poly e = ebi(w, 2);
  CHECK(e == Poly::monomial(2));
  CHECK(phi(w) == Rational(1));
  // empty word projects to 1
  CHECK(ebi(make_word({}, FamilyKind::Free, 3), 0) == Poly::constant(Rational(1)));
  CHECK(phi(make_word({}, FamilyKind::Free, 3)) == Rational(1));
  (void)f;
}

TEST_CASE("ebi requires smax at least the word length") {
  const Word w = make_word({{1, 1}, {2, 2}}, FamilyKind::Free, 3);
  CHECK_THROWS_AS(ebi(w, 1), std::invalid_argument);
}

TEST_CASE("star word moments") {
  CHECK(star_word_moment({}, 3) == Rational(1));
  CHECK(star_word_moment({1, 1}, 3) == ratio(1, 3));
  CHECK(star_word_moment({1, 2, 2, 1}, 3) == ratio(1, 12));
  CHECK(star_word_moment({1, 2, 1, 2}, 3) == Rational(0));  // index 1 sits at two odd slots
  CHECK(star_word_moment({1, 2}, 3) == Rational(0));
  CHECK(star_word_moment({1, 1, 2, 2, 3, 3}, 4) == ratio(1, 120));
  CHECK(star_word_moment({1, 1, 1, 1}, 2) == ratio(1, 3));  // 2!/(2*3)
  CHECK_THROWS_AS(star_word_moment({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(star_word_moment({1, 4}, 3), std::invalid_argument);
}

TEST_CASE("balanced engine agrees with the star closed form on row-one words") {
  for (const int N : {3, 4}) {
    for (const int len : {2, 4}) {
      std::vector<int> idx(static_cast<std::size_t>(len), 1);
      while (true) {
        std::vector<std::pair<int, int>> letters;
        for (const int c : idx) letters.push_back({1, c});
        CHECK(haar_moment(make_word(letters, FamilyKind::HalfLiberated, N)) ==
              star_word_moment(idx, N));
        // odometer over [1,N]^len
        std::size_t pos = 0;
        while (pos < idx.size() && idx[pos] == N) {
          idx[pos] = 1;
          ++pos;
        }
        if (pos == idx.size()) break;
        ++idx[pos];
      }
    }
  }
}

TEST_CASE("word parsing") {
  const Word w = parse_word("u11^2  u22 u12^3", FamilyKind::Free, 2);
  CHECK(w.letters == std::vector<std::pair<int, int>>{
                         {1, 1}, {1, 1}, {2, 2}, {1, 2}, {1, 2}, {1, 2}});
  CHECK(w.model == FamilyKind::Free);
  CHECK(w.N == 2);

  const Word braced = parse_word("u{1,12} u{12,1}^2", FamilyKind::Free, 12);
  CHECK(braced.letters ==
        std::vector<std::pair<int, int>>{{1, 12}, {12, 1}, {12, 1}});

  CHECK(parse_word("", FamilyKind::Free, 3).letters.empty());
  CHECK(parse_word("  ", FamilyKind::Free, 3).letters.empty());

  for (const char* bad : {"v11", "u1", "u{1,2", "u{1;2}", "u11^0", "u11^", "u11x", "u0 1",
                          "u13", "u{0,1}", "u11^-1"}) {
    CHECK_THROWS_WITH_AS(parse_word(bad, FamilyKind::Free, 2), doctest::Contains("malformed word"),
                         std::invalid_argument);
  }
}

TEST_CASE("length caps per model") {
  CHECK(word_length_cap(FamilyKind::Classical) == 8);
  CHECK(word_length_cap(FamilyKind::HalfLiberated) == 10);
  CHECK(word_length_cap(FamilyKind::Free) == 12);
  for (const auto kind : {FamilyKind::Classical, FamilyKind::HalfLiberated, FamilyKind::Free}) {
    std::vector<std::pair<int, int>> letters(
        static_cast<std::size_t>(word_length_cap(kind)) + 2, {1, 1});
    CHECK_THROWS_WITH_AS(haar_moment(make_word(letters, kind, 3)),
                         doctest::Contains("length cap"), std::length_error);
  }
}

TEST_CASE("word index validation") {
  CHECK_THROWS_AS(haar_moment(make_word({{0, 1}, {1, 1}}, FamilyKind::Free, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(haar_moment(make_word({{1, 4}, {1, 1}}, FamilyKind::Free, 3)),
                  std::invalid_argument);
}

}  // TEST_SUITE
