#include "sptmbqc/irrep.hpp"

#include <set>

#include "sptmbqc/linalg.hpp"

namespace sptmbqc {

Mat clock_matrix(long long q) {
  Mat z = Mat::Zero(q, q);
  for (long long k = 0; k < q; ++k) z(k, k) = RationalPhase::of(k, q).to_cx();
  return z;
}

Mat shift_matrix(long long q) {
  Mat x = Mat::Zero(q, q);
  for (long long k = 0; k < q; ++k) x((k + q - 1) % q, k) = 1.0;
  return x;
}

Mat weyl_op(long long D, long long x, long long z) {
  x = ((x % D) + D) % D;
  z = ((z % D) + D) % D;
  Mat m = Mat::Zero(D, D);
  // X^x Z^z maps |k> to Omega^{zk} |k-x>
  for (long long k = 0; k < D; ++k)
    m((k + D - x) % D, k) = RationalPhase::of(z * k, D).to_cx();
  return m;
}

namespace {

// orders must read [q_1, q_1, q_2, q_2, ...]; returns {q_1, q_2, ...}
std::vector<long long> square_form_blocks(const FiniteAbelianGroup& h) {
  if (h.rank() == 0 || h.rank() % 2 != 0)
    throw NotSquareFormError("group rank is odd; expected a product of Z_q x Z_q blocks");
  std::vector<long long> q;
  for (int t = 0; t < h.rank() / 2; ++t) {
    if (h.orders[2 * t] != h.orders[2 * t + 1])
      throw NotSquareFormError("factor orders do not pair up as Z_q x Z_q blocks");
    q.push_back(h.orders[2 * t]);
  }
  return q;
}

GroupElement unit_vector(const FiniteAbelianGroup& h, size_t coord) {
  GroupElement e = h.zero();
  e[coord] = 1;
  return e;
}

// kappa_t from the block pairing beta(e_X, e_Z) = Omega_q^kappa
long long block_kappa(const Cocycle& omega, long long q, size_t coord_z, size_t coord_x) {
  if (q == 1) return 0;
  const RationalPhase beta = omega.pairing(unit_vector(omega.group, coord_x),
                                           unit_vector(omega.group, coord_z));
  if (q % beta.den != 0)
    throw NotMNCError("block pairing order does not divide the block order");
  const long long kappa = beta.num * (q / beta.den) % q;
  if (std::gcd(kappa, q) != 1)
    throw NotMNCError("block pairing is degenerate (kappa not a unit)");
  return kappa;
}

// Solve d(mu) = sigma for a symmetric normalized cocycle sigma:
// mu(g)mu(h)/mu(g+h) = sigma(g,h). Path construction: mu is defined along
// mixed-radix increments, with mu(e_j) a principal n_j-th root of the cyclic
// holonomy product; the result is verified exhaustively and exactly.
std::vector<RationalPhase> solve_symmetric_coboundary(const Cocycle& sigma) {
  const FiniteAbelianGroup& g = sigma.group;
  const size_t rank = static_cast<size_t>(g.rank());
  const long long n = g.size();

  std::vector<RationalPhase> base(rank);
  for (size_t j = 0; j < rank; ++j) {
    RationalPhase holonomy = RationalPhase::one();
    GroupElement acc = g.zero();
    const GroupElement ej = unit_vector(g, j);
    for (long long k = 0; k < g.orders[j]; ++k) {
      holonomy = holonomy * sigma.at(acc, ej);
      acc = g.add(acc, ej);
    }
    base[j] = holonomy.root(g.orders[j]);
  }

  std::vector<RationalPhase> mu(static_cast<size_t>(n));
  mu[0] = RationalPhase::one();
  for (long long idx = 1; idx < n; ++idx) {
    GroupElement el = g.element_at(idx);
    size_t j = rank;
    while (j-- > 0)
      if (el[j] > 0) break;
    GroupElement prev = el;
    prev[j] -= 1;
    mu[static_cast<size_t>(idx)] =
        mu[static_cast<size_t>(g.index_of(prev))] * base[j] *
        sigma.at(prev, unit_vector(g, j)).inv();
  }

  const auto els = g.elements();
  for (const auto& a : els) {
    for (const auto& b : els) {
      const RationalPhase d = mu[static_cast<size_t>(g.index_of(a))] *
                              mu[static_cast<size_t>(g.index_of(b))] *
                              mu[static_cast<size_t>(g.index_of(g.add(a, b)))].inv();
      if (!(d == sigma.at(a, b)))
        throw ValidationError(
            "cocycle is not gauge-equivalent to the block clock-shift form");
    }
  }
  return mu;
}

long long checked_pow(long long p, long long n) {
  long long v = 1;
  for (long long i = 0; i < n; ++i) {
    if (v > (1LL << 40) / p) throw DimensionTooLargeError("prime power too large");
    v *= p;
  }
  return v;
}

}  // namespace

ProjectiveIrrep projective_irrep(const FiniteAbelianGroup& h, const Cocycle& omega) {
  if (!(omega.group == h)) throw ValidationError("cocycle group mismatch");
  if (omega.table.size() != static_cast<size_t>(h.size() * h.size()))
    throw ValidationError("cocycle table size mismatch");
  if (!omega.is_normalized())
    throw ValidationError("cocycle is not normalized (omega(0,h) != 1)");
  if (!omega.satisfies_cocycle_condition())
    throw ValidationError("table violates the 2-cocycle condition");
  if (!is_maximally_noncommutative(omega))
    throw NotMNCError("cocycle is not maximally non-commutative");

  const std::vector<long long> q = square_form_blocks(h);
  const size_t nblocks = q.size();

  // pairing must not couple distinct blocks
  for (size_t a = 0; a < static_cast<size_t>(h.rank()); ++a) {
    for (size_t b = a + 1; b < static_cast<size_t>(h.rank()); ++b) {
      if (a / 2 == b / 2) continue;
      if (!omega.pairing(unit_vector(h, a), unit_vector(h, b)).is_one())
        throw NotSquareFormError("cocycle pairing couples distinct Z_q x Z_q blocks");
    }
  }

  ProjectiveIrrep rep;
  rep.group = h;
  rep.omega = omega;
  rep.factors.resize(nblocks);
  long long dim = 1;
  for (size_t t = 0; t < nblocks; ++t) {
    rep.factors[t].q = q[t];
    rep.factors[t].kappa = block_kappa(omega, q[t], 2 * t, 2 * t + 1);
    dim *= q[t];
  }
  rep.dim = dim;
  if (dim > 64) throw DimensionTooLargeError("irrep dimension exceeds 64");

  // per-block operators Z^(kappa a) X^b, |k> -> Omega^{kappa a (k-b)} |k-b>
  std::vector<std::vector<Mat>> block_ops(nblocks);
  for (size_t t = 0; t < nblocks; ++t) {
    const long long qt = q[t];
    const long long kappa = rep.factors[t].kappa;
    block_ops[t].resize(static_cast<size_t>(qt * qt));
    for (long long a = 0; a < qt; ++a) {
      for (long long b = 0; b < qt; ++b) {
        Mat m = Mat::Zero(qt, qt);
        for (long long k = 0; k < qt; ++k) {
          const long long row = (k + qt - b) % qt;
          m(row, k) = RationalPhase::of(kappa * a * row, qt).to_cx();
        }
        block_ops[t][static_cast<size_t>(a * qt + b)] = std::move(m);
      }
    }
  }

  const auto els = h.elements();

  // bare tensor-product operators and their exact realized cocycle
  std::vector<Mat> bare(els.size());
  for (size_t i = 0; i < els.size(); ++i) {
    Mat m = Mat::Identity(1, 1);
    for (size_t t = 0; t < nblocks; ++t) {
      const long long a = els[i][2 * t];
      const long long b = els[i][2 * t + 1];
      m = kron(m, block_ops[t][static_cast<size_t>(a * q[t] + b)]);
    }
    bare[i] = std::move(m);
  }

  Cocycle residual = trivial_cocycle(h);
  for (const auto& g1 : els) {
    for (const auto& g2 : els) {
      RationalPhase realized = RationalPhase::one();
      for (size_t t = 0; t < nblocks; ++t) {
        realized = realized * RationalPhase::of(
            rep.factors[t].kappa * g1[2 * t + 1] * g2[2 * t], q[t]);
      }
      residual.at(g1, g2) = omega.at(g1, g2) * realized.inv();
    }
  }

  rep.gauge = solve_symmetric_coboundary(residual);
  rep.matrices.resize(els.size());
  for (size_t i = 0; i < els.size(); ++i)
    rep.matrices[i] = rep.gauge[i].to_cx() * bare[i];
  return rep;
}

LogicalOps logical_ops_for_rep(const ProjectiveIrrep& irrep,
                               const std::vector<Character>& chars) {
  const FiniteAbelianGroup& g = irrep.group;
  const size_t nblocks = irrep.factors.size();

  std::vector<long long> moduli;
  for (const auto& f : irrep.factors) moduli.push_back(f.q);
  for (size_t s = 0; s < nblocks; ++s)
    for (size_t t = s + 1; t < nblocks; ++t)
      if (std::gcd(moduli[s], moduli[t]) != 1)
        throw ValidationError(
            "weyl exponent synthesis requires pairwise coprime block orders");

  const long long D = irrep.dim;
  LogicalOps out;
  out.group = g;
  out.dim = D;
  for (const Character& chi : chars) {
    if (chi.exponents.size() != static_cast<size_t>(g.rank()))
      throw ValidationError("character rank mismatch");
    GroupElement hvec = g.zero();
    std::vector<long long> xres(nblocks), zres(nblocks);
    for (size_t t = 0; t < nblocks; ++t) {
      const long long q = irrep.factors[t].q;
      if (q == 1) { xres[t] = 0; zres[t] = 0; continue; }
      const long long kappa = irrep.factors[t].kappa;
      const long long kinv = mod_inverse(kappa, q);
      const long long fz = ((chi.exponents[2 * t] % q) + q) % q;
      const long long fx = ((chi.exponents[2 * t + 1] % q) + q) % q;
      const long long b = kinv * fz % q;
      const long long a = ((-kinv * fx) % q + q) % q;
      hvec[2 * t] = a;
      hvec[2 * t + 1] = b;
      const long long w = (D / q) % q;
      xres[t] = b;
      zres[t] = w * (kappa * a % q) % q;
    }
    LogicalOp op;
    op.chi = chi;
    op.matrix = irrep.matrix(hvec);
    op.x = crt_combine(xres, moduli);
    op.z = crt_combine(zres, moduli);
    out.ops.push_back(std::move(op));
  }
  return out;
}

CanonicalOps canonicalize_generators(const LogicalOps& ops, long long p, long long n) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (n < 1) throw ValidationError("n must be at least 1");
  const long long D = checked_pow(p, n);
  if (ops.dim != D)
    throw ValidationError("operator dimension is not the requested prime power");
  if (ops.ops.empty()) throw ValidationError("no operators to canonicalize");

  // gauge C^i -> C^0^dagger C^i so the first operator becomes the identity
  const long long x0 = ops.ops[0].x, z0 = ops.ops[0].z;
  Character chi0_inv{ops.ops[0].chi.exponents};
  for (auto& e : chi0_inv.exponents) e = -e;
  chi0_inv = Character{ops.group.reduce(chi0_inv.exponents)};

  struct Gauged { Character chi; long long x, z; };
  std::vector<Gauged> gauged;
  for (const auto& op : ops.ops) {
    gauged.push_back({op.chi.times(ops.group, chi0_inv),
                      ((op.x - x0) % D + D) % D, ((op.z - z0) % D + D) % D});
  }

  long long r = 0;
  size_t ia = 0, ib = 0;
  bool found = false;
  for (size_t i = 0; i < gauged.size() && !found; ++i) {
    for (size_t j = i + 1; j < gauged.size(); ++j) {
      const long long s =
          ((gauged[i].x * gauged[j].z - gauged[j].x * gauged[i].z) % D + D) % D;
      if (s % p != 0) { r = s; ia = i; ib = j; found = true; break; }
    }
  }
  if (!found)
    throw NotGeneratingError(
        "all pairwise commutation exponents are divisible by p; "
        "the operators do not generate the Heisenberg-Weyl group");

  // determinant-one exponent change of basis: e_a -> (1,0), e_b -> (0,r)
  const long long rinv = mod_inverse(r, D);
  const long long eax = gauged[ia].x, eaz = gauged[ia].z;
  const long long ebx = gauged[ib].x, ebz = gauged[ib].z;
  const long long t00 = rinv * ebz % D, t01 = ((-rinv * ebx) % D + D) % D;
  const long long t10 = ((-eaz) % D + D) % D, t11 = eax % D;

  CanonicalOps out;
  out.r = r;
  out.ops.group = ops.group;
  out.ops.dim = D;
  for (const auto& gop : gauged) {
    LogicalOp op;
    op.chi = gop.chi;
    op.x = (t00 * gop.x + t01 * gop.z) % D;
    op.z = (t10 * gop.x + t11 * gop.z) % D;
    op.matrix = weyl_op(D, op.x, op.z);
    out.ops.ops.push_back(std::move(op));
  }
  return out;
}

PrimeRestriction restrict_to_prime_power(const FiniteAbelianGroup& h,
                                         const Cocycle& omega, long long p,
                                         long long n) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (n < 1) throw ValidationError("n must be at least 1");
  const std::vector<long long> q = square_form_blocks(h);
  long long sqrt_h = 1;
  for (long long v : q) sqrt_h *= v;
  const long long pn = checked_pow(p, n);
  if (sqrt_h % pn != 0)
    throw NotADivisorError(std::to_string(pn) + " does not divide sqrt|H| = " +
                           std::to_string(sqrt_h));

  size_t block = q.size();
  for (size_t t = 0; t < q.size(); ++t) {
    if (q[t] % p != 0) continue;
    if (block != q.size())
      throw ValidationError("prime is shared across square-form blocks");
    block = t;
  }
  // pn | sqrt_h and blocks sharing p were rejected, so block exists
  long long m = 0, u = q[block];
  while (u % p == 0) { u /= p; ++m; }
  const long long pm = checked_pow(p, m);

  PrimeRestriction res;
  res.p = p;
  res.n = n;
  res.block_q = pm;
  res.subgroup = FiniteAbelianGroup{{pm, pm}};
  res.coord_indices = {static_cast<long long>(2 * block),
                       static_cast<long long>(2 * block + 1)};

  const auto embed = [&](const GroupElement& e) {
    GroupElement full = h.zero();
    full[static_cast<size_t>(res.coord_indices[0])] = u * e[0] % q[block];
    full[static_cast<size_t>(res.coord_indices[1])] = u * e[1] % q[block];
    return full;
  };

  res.omega = trivial_cocycle(res.subgroup);
  const auto els = res.subgroup.elements();
  for (const auto& a : els)
    for (const auto& b : els) res.omega.at(a, b) = omega.at(embed(a), embed(b));

  if (!is_maximally_noncommutative(res.omega))
    throw NotMNCError("restricted cocycle lost maximal non-commutativity");
  return res;
}

LogicalOps restrict_ops_to_block(const LogicalOps& ops,
                                 const PrimeRestriction& restriction) {
  const ProjectiveIrrep block_rep =
      projective_irrep(restriction.subgroup, restriction.omega);
  const long long pm = restriction.block_q;
  const size_t c0 = static_cast<size_t>(restriction.coord_indices[0]);
  const size_t c1 = static_cast<size_t>(restriction.coord_indices[1]);

  std::vector<Character> restricted;
  std::set<std::pair<long long, long long>> seen;
  for (const auto& op : ops.ops) {
    const long long f0 = ((op.chi.exponents[c0] % pm) + pm) % pm;
    const long long f1 = ((op.chi.exponents[c1] % pm) + pm) % pm;
    if (seen.insert({f0, f1}).second) restricted.push_back(Character{{f0, f1}});
  }
  return logical_ops_for_rep(block_rep, restricted);
}

}  // namespace sptmbqc
