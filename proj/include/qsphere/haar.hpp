#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsphere/family.hpp"
#include "qsphere/poly.hpp"

namespace qsphere {

// Pairing class used by the Haar state of each model: all pairings for the
// classical orthogonal group, balanced pairings (every pair joins an odd and
// an even position) for the half-liberated one, non-crossing pairings for the
// free one.
enum class PairingVariant { All, Balanced, NonCrossing };

PairingVariant variant_for(FamilyKind kind);

// Perfect matching of {0, ..., 2k-1}: pairs (a, b) with a < b, sorted by a.
using Pairing = std::vector<std::pair<int, int>>;

// Product of generator entries u_{row,col}, 1-based indices in [1, N].
struct Word {
  std::vector<std::pair<int, int>> letters;
  FamilyKind model = FamilyKind::Free;
  int N = 2;
};

// Longest word each model accepts: the exact Gram inversions stay desk-scale
// (105, 120 and 132 pairings respectively). Longer words raise a
// "length cap" error.
int word_length_cap(FamilyKind kind);

// Complete duplicate-free list; |All| = (2k-1)!!, |Balanced| = k!,
// |NonCrossing| = Catalan(k).
std::vector<Pairing> enumerate_pairings(int k, PairingVariant variant);

// Cycles of the union multigraph of p and q; between 1 and k.
int loops(const Pairing& p, const Pairing& q);

// Exact inverse of the Gram matrix G(p,q) = N^{loops(p,q)}, inverted by
// fraction-free (Bareiss) elimination and cached per (k, variant, N). Throws
// std::domain_error with prefix "singular Gram" when G is not invertible
// (N too small for this word length under this variant).
const RationalMatrix& weingarten_matrix(int k, PairingVariant variant, int N);

// Haar-state moment of w: 0 for odd length, otherwise
// sum_{p,q} Wg(p,q) delta_p(rows) delta_q(cols) where delta_p(idx) = 1 iff
// idx is constant on every pair of p.
Rational haar_moment(const Word& w);

// Orthogonal projection of w onto span{1, u11, ..., u11^smax} in the Haar
// inner product, returned as a polynomial in u11:
//   E_bi(w) = sum_k h(q_k(u11) w) / h(q_k(u11)^2) * q_k.
// Requires smax >= len(w); terms of degree above len(w) vanish by
// orthogonality and are not computed.
Poly ebi(const Word& w, int smax);

// Idempotent-state value phi(w) = ebi(w, len(w)) evaluated at 1. Unlike the
// Haar state, phi is not invariant under cyclic rotation of w.
Rational phi(const Word& w);

// Closed-form half-liberated integral of x_{i1} ... x_{ik}: zero unless each
// index occurs equally often at odd and even positions; otherwise
// prod_a l_a! / prod_{j=0..L-1} (N+j) with l_a the common count of index a
// and L = sum_a l_a.
Rational star_word_moment(const std::vector<int>& indices, int N);

// Word text syntax: whitespace-separated "u{row}{col}" tokens with optional
// "^k" repetition ("u11^2 u22^2"); for N >= 10 row and col are given
// comma-separated in braces ("u{1,12}"). Throws std::invalid_argument with
// prefix "malformed word".
Word parse_word(const std::string& text, FamilyKind model, int N);

}  // namespace qsphere
