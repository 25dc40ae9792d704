#ifndef SPTMBQC_COCYCLE_HPP
#define SPTMBQC_COCYCLE_HPP

#include "sptmbqc/group.hpp"

namespace sptmbqc {

// 2-cocycle omega: H x H -> U(1) stored as an exact table of rational phases,
// indexed by element enumeration order. Cap |H| <= 256 keeps the exhaustive
// checks (cocycle condition, MNC scan) cheap.
struct Cocycle {
  FiniteAbelianGroup group;
  std::vector<RationalPhase> table;  // |H| * |H|, row = first argument

  const RationalPhase& at(const GroupElement& g, const GroupElement& h) const;
  RationalPhase& at(const GroupElement& g, const GroupElement& h);
  cx value(const GroupElement& g, const GroupElement& h) const {
    return at(g, h).to_cx();
  }

  // commutation pairing beta(g,h) = omega(g,h) / omega(h,g)
  RationalPhase pairing(const GroupElement& g, const GroupElement& h) const {
    return at(g, h) * at(h, g).inv();
  }

  // omega(g,h) omega(g+h,k) == omega(h,k) omega(g,h+k), exhaustive and exact
  bool satisfies_cocycle_condition() const;
  bool is_normalized() const;  // omega(0,h) = omega(g,0) = 1
};

Cocycle trivial_cocycle(const FiniteAbelianGroup& g);

// Standard maximally non-commutative representative on Z_D x Z_D:
// omega((a,b),(c,d)) = Omega^{b c}, Omega = exp(2 pi i / D).
Cocycle weyl_cocycle(long long D);

// Cocycle on the direct product group, omega((g1,g2),(h1,h2)) = omega1 * omega2.
Cocycle product_cocycle(const Cocycle& a, const Cocycle& b);

// {g : omega(g,h) = omega(h,g) for all h} = {0}, by exhaustive scan.
bool is_maximally_noncommutative(const Cocycle& omega);

}  // namespace sptmbqc

#endif
