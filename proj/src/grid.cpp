#include "sptmbqc/lie_closure.hpp"

#include <algorithm>
#include <stdexcept>

namespace sptmbqc {

namespace {

long long wrap(long long v, long long d) { return ((v % d) + d) % d; }

bool is_hermitian_point(long long d, long long i, long long j) {
  if (d % 2 != 0) return false;
  const long long h = d / 2;
  return (i == h && j == 0) || (i == 0 && j == h) || (i == h && j == h);
}

struct MoveGeometry {
  bool forbidden = false;
  std::array<long long, 2> triple{0, 0};  // canonical operator the move commutes with
  std::array<std::array<long long, 2>, 2> inspected{{{0, 0}, {0, 0}}};
};

MoveGeometry move_geometry(const GridState& g, MoveKind kind, long long i,
                           long long j) {
  const long long d = g.d;
  const long long r = g.r;
  MoveGeometry m;
  switch (kind) {
    case MoveKind::X:
      m.forbidden = (j == 0);
      m.triple = {1, 0};
      m.inspected = {{{wrap(i + 1, d), j}, {wrap(i - 1, d), j}}};
      break;
    case MoveKind::Z:
      m.forbidden = (i == 0);
      m.triple = {0, wrap(r, d)};
      m.inspected = {{{i, wrap(j + r, d)}, {i, wrap(j - r, d)}}};
      break;
    case MoveKind::Y:
      m.forbidden = (wrap(i * r + j, d) == 0);
      m.triple = {wrap(d - 1, d), wrap(r, d)};
      m.inspected = {{{wrap(i - 1, d), wrap(j + r, d)},
                      {wrap(i + 1, d), wrap(j - r, d)}}};
      break;
  }
  return m;
}

// Core move with a switch for the hermitian rule, shared by apply_move and
// the staged schedule.
bool apply_move_impl(GridState& g, MoveKind kind, long long i, long long j,
                     bool allow_hermitian) {
  const long long d = g.d;
  i = wrap(i, d);
  j = wrap(j, d);
  if (!g.is_marked(i, j)) return false;
  const MoveGeometry m = move_geometry(g, kind, i, j);
  if (m.forbidden) return false;
  if (!g.is_marked(m.triple[0], m.triple[1])) return false;

  const auto& q0 = m.inspected[0];
  const auto& q1 = m.inspected[1];
  const bool h0 = is_hermitian_point(d, q0[0], q0[1]);
  const bool h1 = is_hermitian_point(d, q1[0], q1[1]);

  GridMove entry;
  entry.kind = kind;
  entry.at = {i, j};
  entry.inspected = m.inspected;

  if (allow_hermitian && (h0 || h1)) {
    if (d % 2 != 0)
      throw std::logic_error("hermitian rule fired on an odd grid");
    entry.hermitian = true;
    entry.support = h0 ? q0 : q1;
    for (const auto& q : m.inspected) {
      if (!g.is_marked(q[0], q[1])) {
        g.mark(q[0], q[1]);
        entry.newly_marked.push_back(q);
      }
    }
    if (entry.newly_marked.empty()) return false;
    g.move_log.push_back(std::move(entry));
    return true;
  }

  const bool m0 = g.is_marked(q0[0], q0[1]);
  const bool m1 = g.is_marked(q1[0], q1[1]);
  if (m0 == m1) return false;  // neither, or nothing new
  const auto& known = m0 ? q0 : q1;
  const auto& fresh = m0 ? q1 : q0;
  if (allow_hermitian == false && is_hermitian_point(d, fresh[0], fresh[1]))
    return false;  // staged schedule: hermitian points stay untouched
  entry.support = known;
  g.mark(fresh[0], fresh[1]);
  entry.newly_marked.push_back(fresh);
  g.move_log.push_back(std::move(entry));
  return true;
}

// One full row-major sweep over marked points with the given kinds; returns
// whether any mark was added.
bool sweep(GridState& g, const std::vector<MoveKind>& kinds,
           bool allow_hermitian) {
  bool changed = false;
  for (long long i = 0; i < g.d; ++i)
    for (long long j = 0; j < g.d; ++j) {
      if (!g.is_marked(i, j)) continue;
      for (MoveKind k : kinds)
        if (apply_move_impl(g, k, i, j, allow_hermitian)) changed = true;
    }
  return changed;
}

void saturate(GridState& g, const std::vector<MoveKind>& kinds,
              bool allow_hermitian) {
  while (sweep(g, kinds, allow_hermitian)) {
  }
}

const std::vector<MoveKind> kAllKinds{MoveKind::X, MoveKind::Z, MoveKind::Y};
const std::vector<MoveKind> kXZ{MoveKind::X, MoveKind::Z};

}  // namespace

bool GridState::is_marked(long long i, long long j) const {
  return marked[static_cast<size_t>(wrap(i, d) * d + wrap(j, d))] != 0;
}

void GridState::mark(long long i, long long j) {
  i = wrap(i, d);
  j = wrap(j, d);
  if (i == 0 && j == 0)
    throw std::logic_error("identity point (0,0) cannot be marked");
  marked[static_cast<size_t>(i * d + j)] = 1;
  const long long pi = wrap(d - i, d);
  const long long pj = wrap(d - j, d);
  marked[static_cast<size_t>(pi * d + pj)] = 1;
}

long long GridState::marked_count() const {
  long long n = 0;
  for (char c : marked) n += (c != 0);
  return n;
}

bool GridState::complete() const { return marked_count() == d * d - 1; }

std::string GridState::render() const {
  std::string out;
  out.reserve(static_cast<size_t>(d * (d + 1)));
  for (long long i = 0; i < d; ++i) {
    for (long long j = 0; j < d; ++j) {
      if (is_marked(i, j))
        out += '#';
      else if (is_hermitian_point(d, i, j))
        out += 'H';
      else
        out += '.';
    }
    out += '\n';
  }
  return out;
}

GeneratorSet generator_set(const LogicalOps& ops,
                           const std::vector<int>& present) {
  const long long d = ops.dim;
  for (int idx : present)
    if (idx < 0 || static_cast<size_t>(idx) >= ops.ops.size())
      throw ValidationError("present index out of range");
  GeneratorSet gs;
  gs.d = d;
  for (size_t a = 0; a < present.size(); ++a)
    for (size_t b = a + 1; b < present.size(); ++b) {
      const LogicalOp& oi = ops.ops[static_cast<size_t>(present[a])];
      const LogicalOp& oj = ops.ops[static_cast<size_t>(present[b])];
      GeneratorPair pr;
      pr.i = present[a];
      pr.j = present[b];
      pr.a = wrap(oj.x - oi.x, d);
      pr.b = wrap(oj.z - oi.z, d);
      if (pr.a == 0 && pr.b == 0)
        throw ValidationError(
            "generator pair with identical Weyl exponents; labels must be "
            "distinct");
      gs.pairs.push_back(pr);
    }
  return gs;
}

LogicalOps canonical_triple(long long d, long long r) {
  if (d < 2) throw ValidationError("triple needs dimension >= 2");
  r = wrap(r, d);
  if (r == 0) throw ValidationError("r must be nonzero mod d");
  LogicalOps ops;
  ops.group = FiniteAbelianGroup{{d, d}};
  ops.dim = d;
  const std::vector<std::array<long long, 2>> exps{{0, 0}, {1, 0}, {0, r}};
  for (const auto& e : exps) {
    LogicalOp op;
    op.chi = Character{{e[0], e[1]}};
    op.x = e[0];
    op.z = e[1];
    op.matrix = weyl_op(d, op.x, op.z);
    ops.ops.push_back(std::move(op));
  }
  return ops;
}

GridState grid_init(const GeneratorSet& gs, long long r) {
  GridState g;
  g.d = gs.d;
  g.r = wrap(r, gs.d) == 0 ? 1 : wrap(r, gs.d);
  g.marked.assign(static_cast<size_t>(gs.d * gs.d), 0);
  for (const GeneratorPair& pr : gs.pairs) g.mark(pr.a, pr.b);
  return g;
}

bool apply_move(GridState& g, MoveKind kind, long long i, long long j) {
  return apply_move_impl(g, kind, i, j, true);
}

bool fill_grid(GridState& g, long long r) {
  g.r = wrap(r, g.d) == 0 ? 1 : wrap(r, g.d);
  saturate(g, kAllKinds, true);
  return g.complete();
}

bool replay_move_log(const GridState& initial,
                     const std::vector<GridMove>& log) {
  GridState g = initial;
  g.move_log.clear();
  for (const GridMove& mv : log) {
    if (!g.is_marked(mv.at[0], mv.at[1])) return false;
    const MoveGeometry geo = move_geometry(g, mv.kind, mv.at[0], mv.at[1]);
    if (geo.forbidden) return false;
    if (!g.is_marked(geo.triple[0], geo.triple[1])) return false;
    if (geo.inspected != mv.inspected) return false;
    if (mv.hermitian) {
      if (!is_hermitian_point(g.d, mv.support[0], mv.support[1])) return false;
    } else {
      if (!g.is_marked(mv.support[0], mv.support[1])) return false;
    }
    if (mv.newly_marked.empty()) return false;
    for (const auto& q : mv.newly_marked) {
      if (q != geo.inspected[0] && q != geo.inspected[1]) return false;
      if (g.is_marked(q[0], q[1])) return false;
      g.mark(q[0], q[1]);
    }
  }
  return true;
}

ScheduleTrace staged_schedule_fill(const GeneratorSet& gs, long long r) {
  ScheduleTrace trace;
  GridState g = grid_init(gs, r);

  saturate(g, kXZ, false);
  trace.after_first_band = g;

  // Y rounds unlock the next band of rows and columns; keep the snapshot
  // after the first round, then iterate to the basic-move fixpoint.
  bool first_round = true;
  for (;;) {
    bool changed = sweep(g, {MoveKind::Y}, false);
    saturate(g, kXZ, false);
    if (first_round) {
      trace.after_second_band = g;
      first_round = false;
    }
    if (!changed) break;
  }

  if (g.d % 2 == 0 && !g.complete()) {
    const size_t before = g.move_log.size();
    if (apply_move_impl(g, MoveKind::X, 1, g.d / 2, true)) {
      trace.unlock_used = true;
      trace.unlock = g.move_log[before];
    }
  }
  saturate(g, kAllKinds, true);

  trace.complete = g.complete();
  trace.final_state = std::move(g);
  return trace;
}

}  // namespace sptmbqc
