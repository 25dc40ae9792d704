#include "sptmbqc/lie_closure.hpp"

#include <numeric>
#include <set>

#include "json.hpp"

namespace sptmbqc {

namespace {

std::vector<Character> dedup_characters(const std::vector<Character>& in) {
  std::set<std::vector<long long>> seen;
  std::vector<Character> out;
  for (const Character& c : in)
    if (seen.insert(c.exponents).second) out.push_back(c);
  return out;
}

// Present characters after blocking b sites: all b-fold products (every
// blocked measurement label is a product of b single-site labels).
std::vector<Character> blocked_characters(const FiniteAbelianGroup& g,
                                          const std::vector<Character>& present,
                                          long long b) {
  std::vector<Character> current = dedup_characters(present);
  for (long long k = 2; k <= b; ++k) {
    std::vector<Character> next;
    next.reserve(current.size() * present.size());
    for (const Character& c : current)
      for (const Character& p : present) next.push_back(c.times(g, p));
    current = dedup_characters(next);
  }
  return current;
}

std::vector<int> all_indices(const LogicalOps& ops) {
  std::vector<int> idx(ops.ops.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

long long int_pow(long long base, long long exp) {
  long long v = 1;
  for (long long k = 0; k < exp; ++k) v *= base;
  return v;
}

const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::X: return "X";
    case MoveKind::Z: return "Z";
    case MoveKind::Y: return "Y";
  }
  return "?";
}

}  // namespace

ClosureReport brute_force_closure(const LogicalOps& ops,
                                  const std::vector<int>& present,
                                  double tol) {
  if (present.size() < 2)
    throw ValidationError("closure oracle needs at least two operators");
  const long long d = ops.dim;
  const Mat id = Mat::Identity(d, d);
  std::vector<Mat> gens;
  for (size_t a = 0; a < present.size(); ++a)
    for (size_t b = a + 1; b < present.size(); ++b) {
      const Mat& ca = ops.ops[static_cast<size_t>(present[a])].matrix;
      const Mat& cb = ops.ops[static_cast<size_t>(present[b])].matrix;
      const Mat cad = ca.adjoint();
      const Mat w = cad * cb;
      const Mat wd = w.adjoint();
      Mat g1 = w - wd;                   // alpha = 1 representative
      Mat g2 = cx(0.0, 1.0) * (w + wd);  // alpha = i representative
      g1 -= (g1.trace() / static_cast<double>(d)) * id;
      g2 -= (g2.trace() / static_cast<double>(d)) * id;
      if (g1.norm() > 1e-12) gens.push_back(g1);
      if (g2.norm() > 1e-12) gens.push_back(g2);
    }

  ClosureReport report;
  const int full = static_cast<int>(d * d - 1);
  if (gens.empty()) return report;
  LieSpan span = real_span_closure(gens, tol, full);
  report.dim = span.dim;
  report.basis = std::move(span.basis);
  report.contains_su_d = (span.dim == full);
  return report;
}

ReachabilityReport reachability_report(const FiniteAbelianGroup& h,
                                       const Cocycle& omega,
                                       const std::vector<Character>& present,
                                       long long blocking, double tol) {
  if (blocking < 1) throw ValidationError("blocking must be >= 1");
  ProjectiveIrrep irrep = projective_irrep(h, omega);
  const std::vector<Character> chars =
      blocked_characters(h, present, blocking);
  LogicalOps ops = logical_ops_for_rep(irrep, chars);

  ReachabilityReport report;
  report.blocking = blocking;
  report.sqrt_order = irrep.dim;

  bool all_full = true;
  for (const auto& [p, mult] : factorize(irrep.dim)) {
    for (long long n = 1; n <= mult; ++n) {
      PrimeRestriction restr = restrict_to_prime_power(h, omega, p, n);
      LogicalOps block = restrict_ops_to_block(ops, restr);

      PrimeBlockReport pb;
      pb.p = p;
      pb.n = n;
      pb.block_q = restr.block_q;
      pb.op_count = static_cast<long long>(block.ops.size());

      if (block.ops.size() >= 2) {
        ClosureReport oracle = brute_force_closure(block, all_indices(block), tol);
        pb.oracle_dim = oracle.dim;
        pb.contains_su_block = oracle.contains_su_d;
      }
      pb.contains_su_pn = pb.oracle_dim >= int_pow(p, 2 * n) - 1;

      if (block.ops.size() >= 2) {
        long long m = 0;
        for (long long q = 1; q < restr.block_q; q *= p) ++m;
        try {
          CanonicalOps canon = canonicalize_generators(block, p, m);
          GeneratorSet gs = generator_set(canon.ops, all_indices(canon.ops));
          GridState g = grid_init(gs, canon.r);
          pb.grid_complete = fill_grid(g, canon.r);
          pb.grid_ran = true;
          pb.r = canon.r;
          pb.grid_render = g.render();
          pb.move_count = static_cast<long long>(g.move_log.size());
          pb.move_log = std::move(g.move_log);
        } catch (const NotGeneratingError&) {
          pb.grid_ran = false;  // no canonical triple; oracle verdict only
        }
      }

      if (pb.grid_ran && pb.grid_complete != pb.contains_su_block)
        throw InconsistentVerdictError(
            "grid and oracle verdicts disagree on a prime block");

      all_full = all_full && pb.contains_su_block;
      report.blocks.push_back(std::move(pb));
    }
  }
  report.all_blocks_full = all_full && !report.blocks.empty();
  return report;
}

std::string reachability_to_json(const ReachabilityReport& report) {
  nlohmann::json j;
  j["schema"] = "sptmbqc.reachability";
  j["version"] = 1;
  j["blocking"] = report.blocking;
  j["sqrt_order"] = report.sqrt_order;
  j["all_blocks_full"] = report.all_blocks_full;
  j["blocks"] = nlohmann::json::array();
  for (const PrimeBlockReport& pb : report.blocks) {
    nlohmann::json b;
    b["p"] = pb.p;
    b["n"] = pb.n;
    b["block_q"] = pb.block_q;
    b["op_count"] = pb.op_count;
    b["oracle_dim"] = pb.oracle_dim;
    b["contains_su_block"] = pb.contains_su_block;
    b["contains_su_pn"] = pb.contains_su_pn;
    b["grid_ran"] = pb.grid_ran;
    if (pb.grid_ran) {
      b["grid_complete"] = pb.grid_complete;
      b["r"] = pb.r;
      b["grid"] = pb.grid_render;
      b["move_count"] = pb.move_count;
      nlohmann::json moves = nlohmann::json::array();
      for (const GridMove& mv : pb.move_log) {
        nlohmann::json m;
        m["kind"] = kind_name(mv.kind);
        m["at"] = {mv.at[0], mv.at[1]};
        m["support"] = {mv.support[0], mv.support[1]};
        nlohmann::json marks = nlohmann::json::array();
        for (const auto& q : mv.newly_marked) marks.push_back({q[0], q[1]});
        m["marked"] = marks;
        m["hermitian"] = mv.hermitian;
        moves.push_back(std::move(m));
      }
      b["moves"] = std::move(moves);
    }
    j["blocks"].push_back(std::move(b));
  }
  return j.dump(2);
}

}  // namespace sptmbqc
