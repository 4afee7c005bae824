#include "qsphere/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qsphere/cli.hpp"
#include "qsphere/haar.hpp"
#include "qsphere/levy.hpp"
#include "qsphere/measures.hpp"
#include "qsphere/spectral.hpp"

namespace qsphere {

namespace {

struct Runner {
  std::vector<VerifyResult> results;

  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    VerifyResult r;
    r.name = name;
    try {
      std::string detail;
      r.pass = body(detail);
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

bool throws_with_prefix(const std::function<void()>& body, const std::string& prefix,
                        std::string& detail) {
  try {
    body();
  } catch (const std::exception& e) {
    if (std::string(e.what()).rfind(prefix, 0) == 0) return true;
    detail = std::string("wrong message: ") + e.what();
    return false;
  }
  detail = "no exception thrown";
  return false;
}

Poly q2_target(int N) {
  return Poly({Rational(-1, N - 1), Rational(0), Rational(N, N - 1)});
}

}  // namespace

std::vector<VerifyResult> run_verification() {
  Runner r;

  r.check("ratpoly.parse-canonical", [](std::string&) {
    return parse_rational("-4/6") == Rational(-2, 3) && format_rational(Rational(-2, 3)) == "-2/3";
  });
  r.check("ratpoly.parse-rejects-garbage", [](std::string& d) {
    return throws_with_prefix([] { parse_rational("1/"); }, "malformed rational", d);
  });
  r.check("ratpoly.product", [](std::string&) {
    const Poly x = Poly::monomial(1);
    return (x + Poly::constant(1)) * (x - Poly::constant(1)) ==
           Poly::monomial(2) - Poly::constant(1);
  });
  r.check("ratpoly.synthetic-division", [](std::string&) {
    const Poly p = Poly::monomial(3) - Poly::constant(1);
    return p.div_by_x_minus_one() == Poly({Rational(1), Rational(1), Rational(1)});
  });

  r.check("families.q2-coincidence", [](std::string&) {
    for (const auto kind :
         {FamilyKind::Classical, FamilyKind::HalfLiberated, FamilyKind::Free}) {
      if (!(family_q(Family{kind, 5}, 2) == q2_target(5))) return false;
    }
    return true;
  });
  r.check("families.classical-derivative", [](std::string&) {
    return q_prime_at_one(Family{FamilyKind::Classical, 4}, 6) == Rational(16);
  });
  r.check("families.halflib-closed-form", [](std::string&) {
    const Poly p = star_p(3, 4);
    const Rational at1 = p.eval(Rational(1));
    return (Rational(1) / at1) * p == family_q(Family{FamilyKind::HalfLiberated, 3}, 4);
  });
  r.check("families.free-q3", [](std::string&) {
    return family_q(Family{FamilyKind::Free, 3}, 3) ==
           Poly({Rational(0), Rational(-1), Rational(0), Rational(2)});
  });
  r.check("families.chebyshev-recurrence", [](std::string&) {
    return chebyshev_u(8) == Poly::monomial(1) * chebyshev_u(7) - chebyshev_u(6);
  });

  r.check("measures.classical-m4", [](std::string&) {
    return moment(MomentFunctional{Family{FamilyKind::Classical, 3}}, 4) == Rational(1, 5);
  });
  r.check("measures.free-m4", [](std::string&) {
    return moment(MomentFunctional{Family{FamilyKind::Free, 2}}, 4) == Rational(1, 3);
  });
  r.check("measures.gram-schmidt-legendre", [](std::string&) {
    const auto basis = gram_schmidt(MomentFunctional{Family{FamilyKind::Classical, 3}}, 2);
    Poly p = basis[2];
    p = (Rational(1) / p.coeff(2)) * p;
    return p == Poly({Rational(-1, 3), Rational(0), Rational(1)});
  });
  r.check("measures.levy-json-roundtrip", [](std::string&) {
    const std::string text =
        R"({"atoms":[{"x":"-1/2","w":"2"}],"pieces":[{"lo":"-1","hi":"0","coeffs":["1","1/3"]}]})";
    const LevyMeasure nu = levy_from_json_text(text);
    return levy_from_json_text(levy_to_json_text(nu)).atoms[0].x == Rational(-1, 2);
  });
  r.check("measures.levy-atom-integral", [](std::string&) {
    LevyMeasure nu;
    nu.atoms.push_back(LevyAtom{Rational(1, 2), Rational(2)});
    return levy_integrate(nu, Poly::monomial(2)) == Rational(1, 2);
  });

  r.check("haar.pairing-counts", [](std::string& d) {
    const auto all = enumerate_pairings(3, PairingVariant::All).size();
    const auto bal = enumerate_pairings(3, PairingVariant::Balanced).size();
    const auto nc = enumerate_pairings(3, PairingVariant::NonCrossing).size();
    if (all == 15 && bal == 6 && nc == 5) return true;
    d = "got " + std::to_string(all) + "/" + std::to_string(bal) + "/" + std::to_string(nc);
    return false;
  });
  r.check("haar.loops-self", [](std::string&) {
    const auto ps = enumerate_pairings(3, PairingVariant::All);
    for (const auto& p : ps) {
      if (loops(p, p) != 3) return false;
    }
    return true;
  });
  r.check("haar.weingarten-k1", [](std::string&) {
    const auto& wg = weingarten_matrix(1, PairingVariant::All, 7);
    return wg.size() == 1 && wg[0][0] == Rational(1, 7);
  });
  r.check("haar.moment-golden", [](std::string&) {
    Word w{{{1, 1}, {1, 1}, {2, 2}, {2, 2}}, FamilyKind::Free, 4};
    return haar_moment(w) == Rational(1, 15);
  });
  r.check("haar.traciality-sample", [](std::string&) {
    Word w{{{1, 1}, {1, 2}, {2, 1}, {1, 2}, {1, 1}, {2, 1}}, FamilyKind::Classical, 3};
    Word rot = w;
    std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    return haar_moment(w) == haar_moment(rot);
  });
  r.check("haar.star-word-balance", [](std::string&) {
    return star_word_moment({1, 2, 2, 1}, 3) == Rational(1, 12) &&
           star_word_moment({1, 2, 1, 2}, 3) == Rational(0);
  });
  r.check("haar.parse-word", [](std::string&) {
    const Word w = parse_word("u11^2 u{2,2}", FamilyKind::Free, 2);
    return w.letters ==
           std::vector<std::pair<int, int>>{{1, 1}, {1, 1}, {2, 2}};
  });
  r.check("haar.length-cap", [](std::string& d) {
    return throws_with_prefix(
        [] {
          Word w{{}, FamilyKind::Classical, 3};
          w.letters.assign(10, {1, 1});
          haar_moment(w);
        },
        "length cap", d);
  });
  r.check("haar.singular-gram", [](std::string& d) {
    return throws_with_prefix([] { weingarten_matrix(3, PairingVariant::Balanced, 2); },
                              "singular Gram", d);
  });

  r.check("levy.psi-drift", [](std::string&) {
    return psi(LevyPair{Rational(1), {}}, Poly::monomial(2)) == Rational(-2);
  });
  r.check("levy.laplace-eigenvalue", [](std::string&) {
    return eigenvalue(laplace(Family{FamilyKind::Classical, 3}), 2) == Rational(-6);
  });
  r.check("levy.heat-value", [](std::string& d) {
    const auto e = heat_eigenvalues(laplace(Family{FamilyKind::Classical, 3}), Rational(1), 1);
    const long double target = 0.135335283236612691894L;  // exp(-2)
    if (std::fabs(e[1] - target) < 1e-15L && e[0] == 1.0L) return true;
    std::ostringstream os;
    os << "got " << static_cast<double>(e[1]);
    d = os.str();
    return false;
  });
  r.check("levy.central-atom", [](std::string&) {
    LevyMeasure nu;
    nu.atoms.push_back(LevyAtom{Rational(0), Rational(1)});
    return central_eigenvalue(3, Rational(0), nu, 2) == Rational(-3, 8);
  });
  r.check("levy.schoenberg-drift", [](std::string&) {
    return is_conditionally_positive(LevyPair{Rational(1), {}}, 4).positive;
  });
  r.check("levy.schoenberg-witness", [](std::string&) {
    LevyMeasure nu;
    nu.atoms.push_back(LevyAtom{Rational(1, 2), Rational(1)});
    const auto check = is_conditionally_positive(LevyPair{Rational(0), nu}, 4);
    // psi((x-1)x^j (x-1)x^k) = (1-x0) x0^{j+k} for a unit atom at x0
    return check.positive && check.witness[1][2] == Rational(1, 16);
  });
  r.check("levy.atom-at-one-rejected", [](std::string& d) {
    return throws_with_prefix(
        [] {
          LevyMeasure nu;
          nu.atoms.push_back(LevyAtom{Rational(1), Rational(1)});
          validate_levy(nu, Rational(1));
        },
        "atom at 1", d);
  });

  r.check("spectral.multiplicity-classical", [](std::string&) {
    return multiplicity(Family{FamilyKind::Classical, 3}, 7) == Int(15) &&
           multiplicity(Family{FamilyKind::Classical, 6}, 1) == Int(6);
  });
  r.check("spectral.multiplicity-free", [](std::string&) {
    return multiplicity(Family{FamilyKind::Free, 3}, 4) == Int(55);
  });
  r.check("spectral.free-n2-spectrum", [](std::string&) {
    const auto sp = spectrum(laplace(Family{FamilyKind::Free, 2}), 5);
    const long lambdas[] = {0, -1, -4, -7, -12, -17};
    for (int s = 0; s <= 5; ++s) {
      if (sp[static_cast<std::size_t>(s)].lambda != Rational(lambdas[s])) return false;
      if (sp[static_cast<std::size_t>(s)].multiplicity != Int(s + 1)) return false;
    }
    return true;
  });
  r.check("spectral.zeta-tail-shrinks", [](std::string&) {
    const Generator g = laplace(Family{FamilyKind::Classical, 3});
    const double z100 = zeta_partial(g, 4.0, 100);
    const double z200 = zeta_partial(g, 4.0, 200);
    return z200 > z100 && (z200 - z100) < 1e-3 * z200;
  });
  r.check("spectral.heat-trace-monotone-in-t", [](std::string&) {
    const Generator g = laplace(Family{FamilyKind::Classical, 3});
    return heat_trace_partial(g, Rational(1), 30) < heat_trace_partial(g, Rational(1, 2), 30);
  });
  r.check("spectral.dimension-classical", [](std::string&) {
    const auto d = spectral_dimension(laplace(Family{FamilyKind::Classical, 4}));
    return d.finite && d.value == Rational(3) && d.method == DimensionMethod::ExactOrder;
  });
  r.check("spectral.dimension-free-infinite", [](std::string&) {
    return !spectral_dimension(laplace(Family{FamilyKind::Free, 3})).finite;
  });

  r.check("cli.spectrum-csv", [](std::string& d) {
    std::ostringstream out, err;
    const int rc = cli_main({"spectrum", "--family", "classical", "--N", "3", "--b", "2",
                             "--smax", "2", "--format", "csv"},
                            out, err);
    const std::string expect = "s,m,lambda_num,lambda_float\n0,1,0,0\n1,3,-2,-2\n2,5,-6,-6\n";
    if (rc == 0 && out.str() == expect) return true;
    d = "rc=" + std::to_string(rc) + " out=" + out.str();
    return false;
  });
  r.check("cli.unknown-command", [](std::string& d) {
    std::ostringstream out, err;
    const int rc = cli_main({"frobnicate"}, out, err);
    if (rc == 2 && err.str().rfind("unknown command", 0) == 0) return true;
    d = "rc=" + std::to_string(rc) + " err=" + err.str();
    return false;
  });

  return r.results;
}

}  // namespace qsphere
