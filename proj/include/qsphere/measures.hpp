#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qsphere/family.hpp"
#include "qsphere/poly.hpp"

namespace qsphere {

struct LevyAtom {
  Rational x;  // location
  Rational w;  // weight, > 0
};

struct LevyPiece {
  Rational lo;
  Rational hi;
  Poly density;
};

// Finite positive measure given by point masses plus polynomial-density
// pieces. Integration is exact: atoms by evaluation, pieces by the
// antiderivative of p * density over [lo, hi].
struct LevyMeasure {
  std::vector<LevyAtom> atoms;
  std::vector<LevyPiece> pieces;

  bool is_zero() const { return atoms.empty() && pieces.empty(); }
};

// Checks atom weights > 0, support inside [-bound, bound], lo < hi per piece,
// and rejects an atom at +bound: the jump kernel's limit there is a drift
// term, so its weight belongs in b. Throws std::invalid_argument.
void validate_levy(const LevyMeasure& nu, const Rational& bound);

// Pieces whose density is negative at one of 33 equispaced sample points of
// [lo, hi]. A sanity screen, not a nonnegativity proof; the CLI warns on hits.
std::vector<std::size_t> negative_density_pieces(const LevyMeasure& nu);

// Moment functional of the spectral measure of u11 in the given model:
//   Classical       m_{2k} = prod_{j=1..k} (2j-1)/(N+2j-2)
//   HalfLiberated   m_{2k} = k! (N-1)! / (N+k-1)! = prod_{j=1..k} j/(N+j-1)
//   Free            defined through the q+ basis expansion of x^{2k}
// All odd moments vanish and m_0 = 1.
struct MomentFunctional {
  Family family;
};

Rational moment(const MomentFunctional& mf, int k);

// Linearity over moment: sum_k coeff_k * m_k.
Rational integrate_poly(const MomentFunctional& mf, const Poly& p);

// Monic orthogonal polynomials of degrees 0..maxdeg for mf. Throws
// std::domain_error with prefix "singular Hankel" if the moment sequence is
// degenerate up to maxdeg.
std::vector<Poly> gram_schmidt(const MomentFunctional& mf, int maxdeg);

// Exact integral of p against nu.
Rational levy_integrate(const LevyMeasure& nu, const Poly& p);

// JSON schema:
//   {"atoms":[{"x":"p/q","w":"p/q"},...],
//    "pieces":[{"lo":"p/q","hi":"p/q","coeffs":["p/q",...]},...]}
// Coefficients ascending degree. Parse errors on rationals carry the
// "malformed rational" prefix.
LevyMeasure levy_from_json_text(const std::string& text);
std::string levy_to_json_text(const LevyMeasure& nu);

}  // namespace qsphere
