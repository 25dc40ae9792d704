#ifndef SPTMBQC_IRREP_HPP
#define SPTMBQC_IRREP_HPP

#include "sptmbqc/cocycle.hpp"

namespace sptmbqc {

// q-dimensional clock and shift, Z = diag(1, Omega, ..., Omega^{q-1}),
// X|k> = |k-1 mod q>, so XZ = Omega ZX with Omega = exp(2 pi i / q).
Mat clock_matrix(long long q);
Mat shift_matrix(long long q);
// X^x Z^z in dimension D
Mat weyl_op(long long D, long long x, long long z);

// One Z_q x Z_q block of the square form. kappa is the unit mod q read off
// the commutation pairing of the block's generators; the block operators are
// V((a,b)) = Z^{kappa a} X^b.
struct WeylFactor {
  long long q = 0;
  long long kappa = 1;
};

// Irreducible projective representation of H with factor system omega,
// dimension D = sqrt(|H|). Built as a tensor product of clock-shift blocks
// times a scalar gauge mu making V(g)V(h) = omega(g,h) V(g+h) hold exactly.
struct ProjectiveIrrep {
  FiniteAbelianGroup group;
  Cocycle omega;
  long long dim = 0;
  std::vector<WeylFactor> factors;
  std::vector<RationalPhase> gauge;     // mu(h), indexed by element
  std::vector<Mat> matrices;            // V(h), indexed by element

  const Mat& matrix(const GroupElement& h) const {
    return matrices[static_cast<size_t>(group.index_of(h))];
  }
  const RationalPhase& gauge_at(const GroupElement& h) const {
    return gauge[static_cast<size_t>(group.index_of(h))];
  }
};

// Requires H = prod_t (Z_{q_t} x Z_{q_t}) with the two coordinates of each
// block adjacent (orders [q_1, q_1, q_2, q_2, ...]) and omega maximally
// non-commutative with a pairing that does not couple distinct blocks.
ProjectiveIrrep projective_irrep(const FiniteAbelianGroup& h, const Cocycle& omega);

// One logical operator: the label character, the matrix acting on the logical
// factor, and its Heisenberg-Weyl exponents (x, z), operator ~ X^x Z^z up to
// phase. Commutation is symplectic: C^i C^j = Omega^{x_i z_j - x_j z_i} C^j C^i.
struct LogicalOp {
  Character chi;
  Mat matrix;
  long long x = 0;
  long long z = 0;
};

struct LogicalOps {
  FiniteAbelianGroup group;  // the group the characters live on
  long long dim = 0;         // D; exponents live mod D
  std::vector<LogicalOp> ops;
};

// For each character chi_i, the unique h_i with
// V(h_i) V(h) = chi_i(h) V(h) V(h_i) for all h; C^i = V(h_i).
// Composite D requires the block orders q_t to be pairwise coprime, otherwise
// a single exponent pair mod D cannot carry the commutation data.
LogicalOps logical_ops_for_rep(const ProjectiveIrrep& irrep,
                               const std::vector<Character>& chars);

struct CanonicalOps {
  long long r = 0;  // coprime to p; the normal form contains X and Z^r
  LogicalOps ops;
};

// Gauge C^i -> C^{0 dagger} C^i, then a determinant-one change of the exponent
// basis sending the first pair with p-coprime commutation exponent to
// (1,0), (0,r). Matrices are regenerated as X^x Z^z in the new exponents;
// every downstream quantity (commutation phases, Lie closure dimension) is
// invariant under the suppressed conjugating unitary.
CanonicalOps canonicalize_generators(const LogicalOps& ops, long long p, long long n);

// The Z_{p^m} x Z_{p^m} block of the square form containing the prime p
// (m >= n since p^n divides sqrt|H| and blocks are coprime), with omega
// restricted to it. The full block is returned rather than its order-p^n
// subgroup: restriction to a proper subgroup of a block kills the pairing
// (beta(p^k g, p^k h) = beta(g,h)^{p^{2k}}), so the subgroup cocycle is never
// maximally non-commutative; the containing block is the object that carries
// an MNC class, and su(p^n) embeds in its su(p^m).
struct PrimeRestriction {
  long long p = 0;
  long long n = 0;       // requested power
  long long block_q = 0;  // p^m, the block actually returned
  FiniteAbelianGroup subgroup;
  Cocycle omega;
  std::vector<long long> coord_indices;  // positions of the block in H
};

PrimeRestriction restrict_to_prime_power(const FiniteAbelianGroup& h,
                                         const Cocycle& omega, long long p,
                                         long long n);

// Restriction of logical ops to a block: each character keeps its block
// coordinates (reduced mod block_q), duplicates after restriction are
// dropped, and the block's own irrep supplies the matrices and exponents.
LogicalOps restrict_ops_to_block(const LogicalOps& ops,
                                 const PrimeRestriction& restriction);

}  // namespace sptmbqc

#endif
