#ifndef SPTMBQC_GROUP_HPP
#define SPTMBQC_GROUP_HPP

#include <algorithm>
#include <numeric>

#include "sptmbqc/common.hpp"

namespace sptmbqc {

using GroupElement = std::vector<long long>;

// Unit-modulus number exp(2*pi*i * num/den), kept exact. Multiplication adds
// fractions; all cocycle identities are checked with these, never in floats.
struct RationalPhase {
  long long num = 0;  // normalized: 0 <= num < den, gcd(num, den) = 1
  long long den = 1;

  static RationalPhase of(long long num, long long den);
  static RationalPhase one() { return {0, 1}; }

  RationalPhase operator*(const RationalPhase& o) const;
  RationalPhase inv() const { return of(-num, den); }
  RationalPhase pow(long long k) const { return of(num * k, den); }
  // principal k-th root: divide the fraction by k
  RationalPhase root(long long k) const { return of(num, den * k); }
  bool operator==(const RationalPhase& o) const {
    return num == o.num && den == o.den;
  }
  bool is_one() const { return num == 0; }
  cx to_cx() const {
    return std::exp(cx(0.0, 2.0 * kPi * static_cast<double>(num) /
                               static_cast<double>(den)));
  }
};

// Finite abelian group presented as a product of cyclic factors; elements are
// exponent vectors reduced mod the factor orders. Enumeration (and therefore
// every derived index) is lexicographic in the exponent tuple.
struct FiniteAbelianGroup {
  std::vector<long long> orders;

  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<long long> ord);

  int rank() const { return static_cast<int>(orders.size()); }
  long long size() const;

  GroupElement zero() const { return GroupElement(orders.size(), 0); }
  GroupElement reduce(GroupElement g) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;

  long long index_of(const GroupElement& g) const;
  GroupElement element_at(long long idx) const;
  std::vector<GroupElement> elements() const;

  bool operator==(const FiniteAbelianGroup& o) const { return orders == o.orders; }
};

// chi(h) = exp(2*pi*i sum_j e_j h_j / n_j); multiplication adds exponents.
struct Character {
  std::vector<long long> exponents;

  RationalPhase eval_phase(const FiniteAbelianGroup& g, const GroupElement& h) const;
  cx eval(const FiniteAbelianGroup& g, const GroupElement& h) const {
    return eval_phase(g, h).to_cx();
  }
  Character times(const FiniteAbelianGroup& g, const Character& o) const;
  bool is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](long long e) { return e == 0; });
  }
  bool operator==(const Character& o) const { return exponents == o.exponents; }
};

// all |H| characters, lexicographic in exponent tuples
std::vector<Character> all_characters(const FiniteAbelianGroup& g);

long long mod_pow(long long base, long long exp, long long mod);
long long mod_inverse(long long a, long long mod);  // requires gcd(a, mod) = 1
// CRT recombination for pairwise-coprime moduli
long long crt_combine(const std::vector<long long>& residues,
                      const std::vector<long long>& moduli);

bool is_prime(long long p);
// prime factorization as (prime, multiplicity), primes ascending
std::vector<std::pair<long long, long long>> factorize(long long n);

}  // namespace sptmbqc

#endif
