#include "qsphere/haar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "qsphere/measures.hpp"

namespace qsphere {

PairingVariant variant_for(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Classical: return PairingVariant::All;
    case FamilyKind::HalfLiberated: return PairingVariant::Balanced;
    case FamilyKind::Free: return PairingVariant::NonCrossing;
  }
  throw std::logic_error("unreachable family kind");
}

int word_length_cap(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Classical: return 8;        // 105 pairings
    case FamilyKind::HalfLiberated: return 10;   // 120 pairings
    case FamilyKind::Free: return 12;            // 132 pairings
  }
  throw std::logic_error("unreachable family kind");
}

namespace {

void generate_matchings(std::vector<int>& pts, Pairing& cur, std::vector<Pairing>& out) {
  if (pts.empty()) {
    out.push_back(cur);
    return;
  }
  const int a = pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const int b = pts[i];
    std::vector<int> rest;
    rest.reserve(pts.size() - 2);
    for (std::size_t j = 1; j < pts.size(); ++j) {
      if (j != i) rest.push_back(pts[j]);
    }
    cur.emplace_back(a, b);
    generate_matchings(rest, cur, out);
    cur.pop_back();
  }
}

bool is_noncrossing(const Pairing& p) {
  for (const auto& [a, b] : p) {
    for (const auto& [c, d] : p) {
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

bool is_balanced(const Pairing& p) {
  for (const auto& [a, b] : p) {
    if ((a + b) % 2 == 0) return false;
  }
  return true;
}

std::map<std::pair<int, int>, std::vector<Pairing>>& pairing_cache() {
  static std::map<std::pair<int, int>, std::vector<Pairing>> cache;
  return cache;
}

std::map<std::tuple<int, int, int>, RationalMatrix>& weingarten_cache() {
  static std::map<std::tuple<int, int, int>, RationalMatrix> cache;
  return cache;
}

std::mutex& haar_mutex() {
  static std::mutex m;
  return m;
}

// Exact inverse of an integer matrix by fraction-free (Bareiss) forward
// elimination on the augmented system followed by rational back substitution.
// Throws the supplied message on a singular matrix.
RationalMatrix exact_inverse(std::vector<std::vector<Int>> A, const std::string& singular_msg) {
  const std::size_t n = A.size();
  for (std::size_t i = 0; i < n; ++i) {
    A[i].resize(2 * n, Int(0));
    A[i][n + i] = 1;
  }
  Int prev(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error(singular_msg);
    if (piv != c) std::swap(A[piv], A[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      for (std::size_t j = c + 1; j < 2 * n; ++j) {
        Int t = A[c][c] * A[r][j] - A[r][c] * A[c][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        A[r][j] = std::move(t);
      }
      A[r][c] = 0;
    }
    prev = A[c][c];
  }
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = n; i-- > 0;) {
      Rational acc(A[i][n + t]);
      for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(A[i][j]) * inv[j][t];
      inv[i][t] = acc / Rational(A[i][i]);
    }
  }
  return inv;
}

int variant_cap(PairingVariant variant) {
  switch (variant) {
    case PairingVariant::All: return 4;
    case PairingVariant::Balanced: return 5;
    case PairingVariant::NonCrossing: return 6;
  }
  throw std::logic_error("unreachable pairing variant");
}

const char* variant_name(PairingVariant variant) {
  switch (variant) {
    case PairingVariant::All: return "all";
    case PairingVariant::Balanced: return "balanced";
    case PairingVariant::NonCrossing: return "non-crossing";
  }
  return "?";
}

// Cached complete pairing list; assumes the caller holds haar_mutex().
const std::vector<Pairing>& pairings_locked(int k, PairingVariant variant) {
  auto& slot = pairing_cache()[{k, static_cast<int>(variant)}];
  if (slot.empty()) {
    std::vector<int> pts(static_cast<std::size_t>(2 * k));
    for (int i = 0; i < 2 * k; ++i) pts[static_cast<std::size_t>(i)] = i;
    Pairing cur;
    std::vector<Pairing> all;
    generate_matchings(pts, cur, all);
    for (auto& p : all) {
      if (variant == PairingVariant::NonCrossing && !is_noncrossing(p)) continue;
      if (variant == PairingVariant::Balanced && !is_balanced(p)) continue;
      slot.push_back(std::move(p));
    }
  }
  return slot;
}

const RationalMatrix& weingarten_locked(int k, PairingVariant variant, int N) {
  const auto key = std::make_tuple(k, static_cast<int>(variant), N);
  auto it = weingarten_cache().find(key);
  if (it != weingarten_cache().end()) return it->second;
  const auto& ps = pairings_locked(k, variant);
  const std::size_t n = ps.size();
  std::vector<std::vector<Int>> G(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Int g;
      mpz_ui_pow_ui(g.get_mpz_t(), static_cast<unsigned long>(N),
                    static_cast<unsigned long>(loops(ps[i], ps[j])));
      G[j][i] = g;
      G[i][j] = std::move(g);
    }
  }
  auto inv = exact_inverse(std::move(G),
                           "singular Gram: N=" + std::to_string(N) +
                               " is too small for word length " + std::to_string(2 * k) +
                               " under the " + variant_name(variant) + " pairing class");
  return weingarten_cache().emplace(key, std::move(inv)).first->second;
}

void check_word(const Word& w) {
  if (w.N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  for (const auto& [r, c] : w.letters) {
    if (r < 1 || r > w.N || c < 1 || c > w.N) {
      throw std::invalid_argument("word entry u(" + std::to_string(r) + "," + std::to_string(c) +
                                  ") outside [1," + std::to_string(w.N) + "]^2");
    }
  }
  const int cap = word_length_cap(w.model);
  if (static_cast<int>(w.letters.size()) > cap) {
    throw std::length_error("length cap: word of length " + std::to_string(w.letters.size()) +
                            " exceeds " + std::to_string(cap) + " for the " +
                            family_name(w.model) + " model");
  }
}

bool pair_constant(const Pairing& p, const std::vector<int>& idx) {
  for (const auto& [a, b] : p) {
    if (idx[static_cast<std::size_t>(a)] != idx[static_cast<std::size_t>(b)]) return false;
  }
  return true;
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int k, PairingVariant variant) {
  if (k < 1) throw std::invalid_argument("pairing size k must be >= 1");
  if (k > variant_cap(variant)) {
    throw std::length_error("length cap: word of length " + std::to_string(2 * k) + " exceeds " +
                            std::to_string(2 * variant_cap(variant)) + " for the " +
                            variant_name(variant) + " pairing class");
  }
  std::lock_guard<std::mutex> lock(haar_mutex());
  return pairings_locked(k, variant);
}

int loops(const Pairing& p, const Pairing& q) {
  if (p.size() != q.size()) throw std::invalid_argument("pairings live on different point sets");
  const int n = 2 * static_cast<int>(p.size());
  std::vector<int> pp(static_cast<std::size_t>(n), -1), qq(static_cast<std::size_t>(n), -1);
  for (const auto& [a, b] : p) {
    pp[static_cast<std::size_t>(a)] = b;
    pp[static_cast<std::size_t>(b)] = a;
  }
  for (const auto& [a, b] : q) {
    qq[static_cast<std::size_t>(a)] = b;
    qq[static_cast<std::size_t>(b)] = a;
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int cycles = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++cycles;
    int x = start;
    bool use_p = true;
    // Alternate edges of p and q until the walk closes.
    while (true) {
      seen[static_cast<std::size_t>(x)] = 1;
      x = use_p ? pp[static_cast<std::size_t>(x)] : qq[static_cast<std::size_t>(x)];
      use_p = !use_p;
      if (x == start && use_p) break;
    }
  }
  return cycles;
}

const RationalMatrix& weingarten_matrix(int k, PairingVariant variant, int N) {
  if (k < 1) throw std::invalid_argument("pairing size k must be >= 1");
  if (N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  if (k > variant_cap(variant)) {
    throw std::length_error("length cap: word of length " + std::to_string(2 * k) + " exceeds " +
                            std::to_string(2 * variant_cap(variant)) + " for the " +
                            variant_name(variant) + " pairing class");
  }
  std::lock_guard<std::mutex> lock(haar_mutex());
  return weingarten_locked(k, variant, N);
}

Rational haar_moment(const Word& w) {
  check_word(w);
  const std::size_t len = w.letters.size();
  if (len == 0) return Rational(1);
  if (len % 2 == 1) return Rational(0);
  const int k = static_cast<int>(len / 2);
  const PairingVariant variant = variant_for(w.model);
  std::vector<int> rows(len), cols(len);
  for (std::size_t i = 0; i < len; ++i) {
    rows[i] = w.letters[i].first;
    cols[i] = w.letters[i].second;
  }
  std::lock_guard<std::mutex> lock(haar_mutex());
  const auto& ps = pairings_locked(k, variant);
  const auto& wg = weingarten_locked(k, variant, w.N);
  std::vector<std::size_t> row_ok, col_ok;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (pair_constant(ps[i], rows)) row_ok.push_back(i);
    if (pair_constant(ps[i], cols)) col_ok.push_back(i);
  }
  Rational total(0);
  for (const auto i : row_ok) {
    for (const auto j : col_ok) total += wg[i][j];
  }
  return total;
}

Poly ebi(const Word& w, int smax) {
  check_word(w);
  const int len = static_cast<int>(w.letters.size());
  if (smax < len) {
    throw std::invalid_argument("ebi truncation degree " + std::to_string(smax) +
                                " is below the word length " + std::to_string(len));
  }
  const Family fam{w.model, w.N};
  const MomentFunctional mf{fam};
  Poly result;
  // Projection coefficients of degree above len(w) vanish by orthogonality.
  for (int k = 0; k <= len; ++k) {
    const Poly qk = family_q(fam, k);
    Rational num(0);
    const auto& qc = qk.coeffs();
    for (std::size_t j = 0; j < qc.size(); ++j) {
      if (qc[j] == 0) continue;
      Word shifted = w;
      shifted.letters.insert(shifted.letters.begin(), j, {1, 1});
      num += qc[j] * haar_moment(shifted);
    }
    if (num == 0) continue;
    result = result + (num / integrate_poly(mf, qk * qk)) * qk;
  }
  return result;
}

Rational phi(const Word& w) {
  return ebi(w, static_cast<int>(w.letters.size())).eval(Rational(1));
}

Rational star_word_moment(const std::vector<int>& indices, int N) {
  if (N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
  std::map<int, std::pair<long, long>> counts;  // index -> (odd-position, even-position)
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const int a = indices[i];
    if (a < 1 || a > N) {
      throw std::invalid_argument("index " + std::to_string(a) + " outside [1," +
                                  std::to_string(N) + "]");
    }
    auto& c = counts[a];
    (i % 2 == 0 ? c.first : c.second) += 1;  // position i+1 is odd when i is even
  }
  Int num(1);
  long total = 0;
  for (const auto& [a, c] : counts) {
    (void)a;
    if (c.first != c.second) return Rational(0);
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c.first));
    num *= f;
    total += c.first;
  }
  Int den(1);
  for (long j = 0; j < total; ++j) den *= N + j;
  Rational r = Rational(num) / Rational(den);
  return r;
}

Word parse_word(const std::string& text, FamilyKind model, int N) {
  Word w;
  w.model = model;
  w.N = N;
  std::size_t i = 0;
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed word: " + why);
  };
  const auto read_number = [&](const char* what) {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      fail(std::string("expected ") + what + " at position " + std::to_string(i));
    }
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000) fail(std::string(what) + " is out of range");
      ++i;
    }
    return v;
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != 'u') fail("expected 'u' at position " + std::to_string(i));
    ++i;
    long row, col;
    if (i < text.size() && text[i] == '{') {
      ++i;
      row = read_number("row");
      if (i >= text.size() || text[i] != ',') fail("expected ',' in braced entry");
      ++i;
      col = read_number("column");
      if (i >= text.size() || text[i] != '}') fail("expected '}' in braced entry");
      ++i;
    } else {
      // Two single digits: "u11".
      if (i + 1 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])) ||
          !std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        fail("expected two digit indices at position " + std::to_string(i));
      }
      row = text[i] - '0';
      col = text[i + 1] - '0';
      i += 2;
    }
    long rep = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      rep = read_number("exponent");
      if (rep < 1) fail("exponent must be >= 1");
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      fail("unexpected character at position " + std::to_string(i));
    }
    if (row < 1 || row > N || col < 1 || col > N) {
      fail("entry u(" + std::to_string(row) + "," + std::to_string(col) + ") outside [1," +
           std::to_string(N) + "]^2");
    }
    for (long r = 0; r < rep; ++r) {
      w.letters.emplace_back(static_cast<int>(row), static_cast<int>(col));
    }
  }
  return w;
}

}  // namespace qsphere
