#ifndef SPTMBQC_LIE_CLOSURE_HPP
#define SPTMBQC_LIE_CLOSURE_HPP

#include "sptmbqc/irrep.hpp"
#include "sptmbqc/lie_span.hpp"

namespace sptmbqc {

// One unordered pair of logical operators, denoting the two-real-parameter
// antihermitian family {alpha C^{i dag} C^j - alpha^* C^{j dag} C^i}. (a,b)
// are the Heisenberg-Weyl exponents of C^{i dag} C^j mod D.
struct GeneratorPair {
  int i = 0;
  int j = 0;
  long long a = 0;
  long long b = 0;
};

struct GeneratorSet {
  long long d = 0;
  std::vector<GeneratorPair> pairs;
};

// All unordered pairs over the present character indices. Pairs are listed
// with i < j; duplicate exponent labels across distinct pairs are kept (they
// are distinct generator families differing by a phase).
GeneratorSet generator_set(const LogicalOps& ops,
                           const std::vector<int>& present);

// Synthetic operator triple with exponents (0,0), (1,0), (0,r) in dimension
// d, whose pairwise differences are the canonical initial marks
// {(1,0),(0,r),(d-1,r)}.
LogicalOps canonical_triple(long long d, long long r);

enum class MoveKind { X, Z, Y };

// Record of one successful move: the source point, the two inspected points,
// the justification (an already-marked inspected point, or a hermitian point
// when the even-D rule fired) and the points newly marked (their redundant
// partners are marked silently).
struct GridMove {
  MoveKind kind = MoveKind::X;
  std::array<long long, 2> at{0, 0};
  std::array<std::array<long long, 2>, 2> inspected{{{0, 0}, {0, 0}}};
  std::array<long long, 2> support{0, 0};
  std::vector<std::array<long long, 2>> newly_marked;
  bool hermitian = false;
};

// D x D grid over points (i,j) <-> the family {alpha X^i Z^j - h.c.}.
// Marked sets are kept closed under the redundancy (i,j) -> (D-i,D-j);
// (0,0) is never marked.
struct GridState {
  long long d = 0;
  long long r = 1;
  std::vector<char> marked;  // row-major, marked[i*d + j]
  std::vector<GridMove> move_log;

  bool is_marked(long long i, long long j) const;
  void mark(long long i, long long j);  // also marks the partner
  long long marked_count() const;
  bool complete() const;  // all d^2 - 1 nonzero points marked
  // '#' marked, 'H' unmarked hermitian point, '.' otherwise; one row per line
  std::string render() const;
};

// Marks each pair's exponent point and its redundant partner; empty log.
GridState grid_init(const GeneratorSet& gs, long long r = 1);

// One move from the marked point (i,j). Moves are commutators with the
// canonical triple operators, so kind X needs (1,0) marked, Z needs (0,r),
// Y needs (d-1,r); the forbidden lines j=0 / i=0 / ir+j=0 mod d are where
// the commutator vanishes. When an inspected point is hermitian ((d/2,0),
// (0,d/2) or (d/2,d/2), even d only) both inspected points are marked
// unconditionally. Returns false (no-op) when nothing new was marked.
bool apply_move(GridState& g, MoveKind kind, long long i, long long j);

// Saturation: sweep points in row-major order and kinds in X,Z,Y order,
// repeating until a full sweep adds no mark. Returns completeness.
bool fill_grid(GridState& g, long long r);

// Re-applies a move log against the same initial marks and checks every
// move's preconditions at its time of application (certificate property).
bool replay_move_log(const GridState& initial,
                     const std::vector<GridMove>& log);

// Staged filling that reproduces the hand-crafted schedule: first X/Z moves
// only, then rounds of Y moves plus X/Z saturation (hermitian rule disabled
// in both), then for even d one explicit X move at (1, d/2) unlocking the
// hermitian points, then full saturation.
struct ScheduleTrace {
  GridState after_first_band;   // X/Z saturation from the initial marks
  GridState after_second_band;  // after the first Y round
  bool unlock_used = false;
  GridMove unlock;  // the hermitian-assisted move, when used
  GridState final_state;
  bool complete = false;
};

ScheduleTrace staged_schedule_fill(const GeneratorSet& gs, long long r);

// Brute-force oracle: for every pair the alpha = 1 and alpha = i
// representatives (traceless parts), closed under commutators.
struct ClosureReport {
  long long dim = 0;
  std::vector<Mat> basis;
  bool contains_su_d = false;  // dim == d^2 - 1
};

ClosureReport brute_force_closure(const LogicalOps& ops,
                                  const std::vector<int>& present,
                                  double tol = 1e-9);

// One prime-power entry of the reachability report. The grid abstains
// (grid_ran = false) when the restricted set has no canonical form; when it
// runs, its verdict must agree with the oracle.
struct PrimeBlockReport {
  long long p = 0;
  long long n = 0;        // requested power, p^n | sqrt|H|
  long long block_q = 0;  // dimension of the block actually analyzed
  long long op_count = 0;
  long long oracle_dim = 0;
  bool contains_su_block = false;  // oracle dim == block_q^2 - 1
  bool contains_su_pn = false;     // oracle dim >= p^(2n) - 1
  bool grid_ran = false;
  bool grid_complete = false;
  long long r = 0;  // canonical r when the grid ran
  std::string grid_render;
  long long move_count = 0;
  std::vector<GridMove> move_log;
};

struct ReachabilityReport {
  long long blocking = 1;
  long long sqrt_order = 0;
  std::vector<PrimeBlockReport> blocks;
  bool all_blocks_full = false;
};

// For each prime power p^n dividing sqrt|H|: restrict the present operators
// to the containing block, canonicalize, grid-fill and cross-check against
// the oracle. With blocking b > 1 the present character set is replaced by
// all b-fold products before restriction. Throws InconsistentVerdictError
// if the two methods ever disagree.
ReachabilityReport reachability_report(const FiniteAbelianGroup& h,
                                       const Cocycle& omega,
                                       const std::vector<Character>& present,
                                       long long blocking = 1,
                                       double tol = 1e-9);

std::string reachability_to_json(const ReachabilityReport& report);

}  // namespace sptmbqc

#endif
