#include "qsphere/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qsphere {

namespace {

// "-123" or "123"; empty or stray characters are rejected.
bool scan_integer(const std::string& s, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return false;
  if (s[lo] == '-') ++lo;
  if (lo >= hi) return false;
  for (std::size_t i = lo; i < hi; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = scan_integer(text, 0, text.size());
  } else {
    ok = scan_integer(text, 0, slash) && scan_integer(text, slash + 1, text.size()) &&
         text.find('/', slash + 1) == std::string::npos;
  }
  if (!ok) throw std::invalid_argument("malformed rational: \"" + text + "\"");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0) {
    throw std::invalid_argument("malformed rational: \"" + text + "\"");
  }
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) {
    throw std::invalid_argument("malformed rational: zero denominator in \"" + text + "\"");
  }
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("malformed rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Int binomial_int(long n, long k) {
  if (n < 0 || k < 0 || k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace qsphere
