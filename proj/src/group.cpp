#include "sptmbqc/group.hpp"

#include <algorithm>

namespace sptmbqc {

namespace {
long long gcd_ll(long long a, long long b) {
  while (b) { long long t = a % b; a = b; b = t; }
  return a < 0 ? -a : a;
}
}  // namespace

RationalPhase RationalPhase::of(long long num, long long den) {
  if (den == 0) throw ValidationError("RationalPhase: zero denominator");
  if (den < 0) { den = -den; num = -num; }
  num %= den;
  if (num < 0) num += den;
  long long g = gcd_ll(num, den);
  if (g == 0) g = 1;
  return RationalPhase{num / g, den / g};
}

RationalPhase RationalPhase::operator*(const RationalPhase& o) const {
  return of(num * o.den + o.num * den, den * o.den);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long long> ord)
    : orders(std::move(ord)) {
  for (long long n : orders)
    if (n < 1) throw ValidationError("FiniteAbelianGroup: factor order < 1");
  if (size() > (1LL << 40))
    throw DimensionTooLargeError("FiniteAbelianGroup: group too large");
}

long long FiniteAbelianGroup::size() const {
  long long s = 1;
  for (long long n : orders) s *= n;
  return s;
}

GroupElement FiniteAbelianGroup::reduce(GroupElement g) const {
  if (g.size() != orders.size())
    throw ValidationError("group element rank mismatch");
  for (size_t i = 0; i < g.size(); ++i) {
    g[i] %= orders[i];
    if (g[i] < 0) g[i] += orders[i];
  }
  return g;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement out(a);
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return reduce(std::move(out));
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
  GroupElement out(a);
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return reduce(std::move(out));
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
  GroupElement out(a);
  for (auto& v : out) v = -v;
  return reduce(std::move(out));
}

long long FiniteAbelianGroup::index_of(const GroupElement& g) const {
  GroupElement r = reduce(g);
  long long idx = 0;
  for (size_t i = 0; i < r.size(); ++i) idx = idx * orders[i] + r[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(long long idx) const {
  GroupElement g(orders.size(), 0);
  for (size_t i = orders.size(); i-- > 0;) {
    g[i] = idx % orders[i];
    idx /= orders[i];
  }
  return g;
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(size()));
  for (long long i = 0; i < size(); ++i) out.push_back(element_at(i));
  return out;
}

RationalPhase Character::eval_phase(const FiniteAbelianGroup& g,
                                    const GroupElement& h) const {
  if (exponents.size() != g.orders.size())
    throw ValidationError("character rank mismatch");
  RationalPhase p = RationalPhase::one();
  GroupElement hr = g.reduce(h);
  for (size_t i = 0; i < exponents.size(); ++i)
    p = p * RationalPhase::of(exponents[i] * hr[i], g.orders[i]);
  return p;
}

Character Character::times(const FiniteAbelianGroup& g, const Character& o) const {
  Character out{exponents};
  for (size_t i = 0; i < out.exponents.size(); ++i) {
    out.exponents[i] = (out.exponents[i] + o.exponents[i]) % g.orders[i];
    if (out.exponents[i] < 0) out.exponents[i] += g.orders[i];
  }
  return out;
}

std::vector<Character> all_characters(const FiniteAbelianGroup& g) {
  std::vector<Character> out;
  out.reserve(static_cast<size_t>(g.size()));
  for (long long i = 0; i < g.size(); ++i) out.push_back(Character{g.element_at(i)});
  return out;
}

long long mod_pow(long long base, long long exp, long long mod) {
  base %= mod;
  if (base < 0) base += mod;
  long long r = 1;
  while (exp > 0) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

long long mod_inverse(long long a, long long mod) {
  a %= mod;
  if (a < 0) a += mod;
  long long t = 0, new_t = 1, r = mod, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1)
    throw ValidationError("mod_inverse: " + std::to_string(a) + " not a unit mod " +
                          std::to_string(mod));
  return t < 0 ? t + mod : t;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::pair<long long, long long>> factorize(long long n) {
  if (n < 1) throw ValidationError("factorize: argument must be positive");
  std::vector<std::pair<long long, long long>> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    long long m = 0;
    while (n % d == 0) { n /= d; ++m; }
    out.emplace_back(d, m);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long long crt_combine(const std::vector<long long>& residues,
                      const std::vector<long long>& moduli) {
  long long m = 1;
  for (long long q : moduli) m *= q;
  long long x = 0;
  for (size_t i = 0; i < moduli.size(); ++i) {
    long long mi = m / moduli[i];
    long long yi = mod_inverse(mi % moduli[i], moduli[i]);
    x = (x + residues[i] % moduli[i] * mi % m * yi) % m;
  }
  return (x % m + m) % m;
}

}  // namespace sptmbqc
