#include "qsphere/measures.hpp"

#include <json.hpp>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace qsphere {

void validate_levy(const LevyMeasure& nu, const Rational& bound) {
  for (const auto& a : nu.atoms) {
    if (a.w <= 0) {
      throw std::invalid_argument("atom weight must be positive (got " + format_rational(a.w) +
                                  ")");
    }
    if (a.x == bound) {
      throw std::invalid_argument("atom at " + format_rational(bound) +
                                  ": fold its weight into the drift b");
    }
    if (a.x < -bound || a.x > bound) {
      throw std::invalid_argument("atom location " + format_rational(a.x) + " outside [-" +
                                  format_rational(bound) + ", " + format_rational(bound) + "]");
    }
  }
  for (const auto& p : nu.pieces) {
    if (!(p.lo < p.hi)) {
      throw std::invalid_argument("piece bounds must satisfy lo < hi (got [" +
                                  format_rational(p.lo) + ", " + format_rational(p.hi) + "])");
    }
    if (p.lo < -bound || p.hi > bound) {
      throw std::invalid_argument("piece [" + format_rational(p.lo) + ", " +
                                  format_rational(p.hi) + "] outside the support bound " +
                                  format_rational(bound));
    }
  }
}

std::vector<std::size_t> negative_density_pieces(const LevyMeasure& nu) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < nu.pieces.size(); ++i) {
    const auto& p = nu.pieces[i];
    const Rational step = (p.hi - p.lo) / Rational(32);
    for (int j = 0; j <= 32; ++j) {
      if (p.density.eval(p.lo + Rational(j) * step) < 0) {
        bad.push_back(i);
        break;
      }
    }
  }
  return bad;
}

namespace {

std::map<std::tuple<int, int, int>, Rational>& moment_cache() {
  static std::map<std::tuple<int, int, int>, Rational> cache;
  return cache;
}

std::mutex& moment_mutex() {
  static std::mutex m;
  return m;
}

// Coefficient of q_0 after expanding x^k in the free q+ basis, using
// x q_m = (a_m q_{m+1} + a_{m-1} q_{m-1}) / U_m(N) for m >= 1 and x q_0 = q_1.
Rational free_moment(int N, int k) {
  std::vector<Int> u(static_cast<std::size_t>(k) + 2);
  std::vector<Int> a(static_cast<std::size_t>(k) + 2);
  u[0] = 1;
  a[0] = 1;
  if (k + 1 >= 1) u[1] = N;
  for (int i = 2; i <= k + 1; ++i) u[static_cast<std::size_t>(i)] = N * u[i - 1] - u[i - 2];
  for (int i = 1; i <= k + 1; ++i) a[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] - a[i - 1];
  std::vector<Rational> c{Rational(1)};
  for (int step = 0; step < k; ++step) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] == 0) continue;
      if (m == 0) {
        next[1] += c[0];
      } else {
        const Rational um(u[m]);
        next[m + 1] += c[m] * Rational(a[m]) / um;
        next[m - 1] += c[m] * Rational(a[m - 1]) / um;
      }
    }
    c = std::move(next);
  }
  return c[0];
}

}  // namespace

Rational moment(const MomentFunctional& mf, int k) {
  validate_family(mf.family);
  if (k < 0) throw std::invalid_argument("moment index must be >= 0");
  if (k % 2 == 1) return Rational(0);
  const auto key = std::make_tuple(static_cast<int>(mf.family.kind), mf.family.N, k);
  std::lock_guard<std::mutex> lock(moment_mutex());
  auto it = moment_cache().find(key);
  if (it != moment_cache().end()) return it->second;
  const int N = mf.family.N;
  Rational m(1);
  switch (mf.family.kind) {
    case FamilyKind::Classical:
      for (int j = 1; j <= k / 2; ++j) m *= ratio(2 * j - 1, N + 2 * j - 2);
      break;
    case FamilyKind::HalfLiberated:
      for (int j = 1; j <= k / 2; ++j) m *= ratio(j, N + j - 1);
      break;
    case FamilyKind::Free:
      m = free_moment(N, k);
      break;
  }
  moment_cache().emplace(key, m);
  return m;
}

Rational integrate_poly(const MomentFunctional& mf, const Poly& p) {
  Rational total(0);
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0 || k % 2 == 1) continue;  // all three measures are symmetric
    total += c[k] * moment(mf, static_cast<int>(k));
  }
  return total;
}

std::vector<Poly> gram_schmidt(const MomentFunctional& mf, int maxdeg) {
  if (maxdeg < 0) throw std::invalid_argument("maxdeg must be >= 0");
  std::vector<Poly> out;
  std::vector<Rational> norms;
  out.reserve(static_cast<std::size_t>(maxdeg) + 1);
  for (int d = 0; d <= maxdeg; ++d) {
    Poly p = Poly::monomial(d);
    for (std::size_t j = 0; j < out.size(); ++j) {
      // <x^d, p_j> without forming the product polynomial.
      Rational num(0);
      const auto& qc = out[j].coeffs();
      for (std::size_t i = 0; i < qc.size(); ++i) {
        if (qc[i] == 0) continue;
        num += qc[i] * moment(mf, d + static_cast<int>(i));
      }
      if (num != 0) p = p - (num / norms[j]) * out[j];
    }
    Rational norm = integrate_poly(mf, p * p);
    if (norm == 0) {
      throw std::domain_error("singular Hankel matrix: degenerate moment sequence at degree " +
                              std::to_string(d));
    }
    out.push_back(std::move(p));
    norms.push_back(std::move(norm));
  }
  return out;
}

Rational levy_integrate(const LevyMeasure& nu, const Poly& p) {
  Rational total(0);
  for (const auto& a : nu.atoms) total += a.w * p.eval(a.x);
  for (const auto& piece : nu.pieces) {
    const Poly f = (p * piece.density).antiderivative();
    total += f.eval(piece.hi) - f.eval(piece.lo);
  }
  return total;
}

namespace {

using nlohmann::json;

Rational json_rational(const json& v, const char* where) {
  if (!v.is_string()) {
    throw std::invalid_argument(std::string("malformed measure JSON: ") + where +
                                " must be a rational string");
  }
  return parse_rational(v.get<std::string>());
}

}  // namespace

LevyMeasure levy_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed measure JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("malformed measure JSON: expected an object");
  LevyMeasure nu;
  try {
    for (const auto& a : j.value("atoms", json::array())) {
      nu.atoms.push_back({json_rational(a.at("x"), "atom x"), json_rational(a.at("w"), "atom w")});
    }
    for (const auto& p : j.value("pieces", json::array())) {
      std::vector<Rational> coeffs;
      for (const auto& c : p.at("coeffs")) coeffs.push_back(json_rational(c, "piece coeff"));
      nu.pieces.push_back(
          {json_rational(p.at("lo"), "piece lo"), json_rational(p.at("hi"), "piece hi"),
           Poly(std::move(coeffs))});
    }
  } catch (const json::exception& e) {  // missing keys, wrong shapes
    throw std::invalid_argument(std::string("malformed measure JSON: ") + e.what());
  }
  return nu;
}

std::string levy_to_json_text(const LevyMeasure& nu) {
  nlohmann::ordered_json j;
  j["atoms"] = nlohmann::ordered_json::array();
  for (const auto& a : nu.atoms) {
    j["atoms"].push_back({{"x", format_rational(a.x)}, {"w", format_rational(a.w)}});
  }
  j["pieces"] = nlohmann::ordered_json::array();
  for (const auto& p : nu.pieces) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& c : p.density.coeffs()) coeffs.push_back(format_rational(c));
    j["pieces"].push_back(
        {{"lo", format_rational(p.lo)}, {"hi", format_rational(p.hi)}, {"coeffs", coeffs}});
  }
  return j.dump();
}

}  // namespace qsphere
