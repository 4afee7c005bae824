#pragma once

#include <string>
#include <vector>

#include "qsphere/family.hpp"
#include "qsphere/levy.hpp"

namespace qsphere {

struct SpectrumEntry {
  int s = 0;
  Int multiplicity;
  Rational lambda;
};

// Dimension of the eigenspace D_s:
//   Classical       C(s+N-2, N-2) + C(s+N-3, N-2)
//   HalfLiberated   s = 2m:   A^2 + 2AB with A = C(m+N-2, N-2), B = C(m+N-2, N-1)
//                   s = 2m+1: A'A + A'B + B'A with A' = C(m+N-1, N-2),
//                             B' = C(m+N-1, N-1)
//   Free            U_s(N)
Int multiplicity(const Family& f, int s);

// Entries s = 0..smax for the generator g.
std::vector<SpectrumEntry> spectrum(const Generator& g, int smax);

// Partial sum over 1 <= s <= smax of m_s * (-lambda_s)^{-z/2} (the kernel
// s = 0 is excluded). Throws std::domain_error if some lambda_s = 0 for
// s >= 1 (degenerate generator); positive eigenvalues are likewise rejected.
double zeta_partial(const Generator& g, double z, int smax);

// Sum over 0 <= s <= smax of m_s * exp(t lambda_s); requires t > 0.
long double heat_trace_partial(const Generator& g, const Rational& t, int smax);

enum class DimensionMethod { ExactOrder, NumericRegression };

// Spectral dimension d: abscissa of convergence of sum m_s (-lambda_s)^{-z/2},
// equal to 2(a+1)/beta for polynomial growth orders a (multiplicity) and beta
// (eigenvalue); infinite when multiplicity grows exponentially while the
// eigenvalues stay polynomial.
struct SpectralDimension {
  bool finite = true;
  Rational value;  // meaningful when finite
  DimensionMethod method = DimensionMethod::ExactOrder;
  double regression_estimate = 0.0;  // log-log cross-check (finite cases)
  std::string warning;               // non-empty when regression flagged the pair
};

// Exact-order classification (requires b > 0), cross-checked by a log-log
// regression over s in [smax/2, smax] with smax = 400; disagreement above 5%
// on polynomial cases throws std::logic_error. When nu != 0 the eigenvalue
// order is regressed over s in [30, 60]: within 10% of the Laplace-case order
// the exact classification is kept, otherwise the result carries method
// NumericRegression and a warning.
SpectralDimension spectral_dimension(const Generator& g);

}  // namespace qsphere
