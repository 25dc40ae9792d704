// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line with the measured quantities; the process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sptmbqc/lie_closure.hpp"
#include "sptmbqc/mbqc.hpp"

using namespace sptmbqc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Mat sigma(int i) {
  Mat m(2, 2);
  if (i == 0) m << 0, 1, 1, 0;
  if (i == 1) m << 0, cx(0, -1), cx(0, 1), 0;
  if (i == 2) m << 1, 0, 0, -1;
  return m;
}

LogicalOps pauli_ops() {
  LogicalOps ops;
  ops.group = FiniteAbelianGroup{{2, 2}};
  ops.dim = 2;
  const std::vector<std::vector<long long>> chars = {{1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::pair<long long, long long>> exps = {
      {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    LogicalOp op;
    op.chi = Character{chars[static_cast<size_t>(i)]};
    op.matrix = sigma(i);
    op.x = exps[static_cast<size_t>(i)].first;
    op.z = exps[static_cast<size_t>(i)].second;
    ops.ops.push_back(std::move(op));
  }
  return ops;
}

// kappa = 2 reference state; the seed is pinned so the spectral data quoted
// in the details below stays reproducible
MPSTensor kappa2_tensor() {
  return spt_tensor(pauli_ops(), random_primitive_junk(3, 2, 21));
}

Mat plus_state() {
  Mat r(2, 2);
  r << 0.5, 0.5, 0.5, 0.5;
  return r;
}

Mat z_rotation(double alpha) {
  Mat u = Mat::Zero(2, 2);
  u(0, 0) = std::exp(cx(0.0, -alpha / 2.0));
  u(1, 1) = std::exp(cx(0.0, alpha / 2.0));
  return u;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. Spin-1 calibration: all nine constants equal 1/3 exactly, instantly.
Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const NuMatrix nu = calibrate_nu(aklt_tensor());
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(nu.nu(i, j) - cx(1.0 / 3.0, 0.0)));
  const double el = seconds_since(t0);
  Outcome r;
  r.ok = worst <= 1e-12 && el < 1.0;
  r.detail = "max |nu_ij - 1/3| = " + num(worst) + ", " + num(el) + " s";
  return r;
}

// 2. One finite-angle step is the 2/3 rotated + 1/3 identity mixture; a
//    small tilt reproduces the reduced-angle unitary.
Outcome criterion_2() {
  const MPSTensor t = aklt_tensor();
  const Mat junk1 = Mat::Identity(1, 1);
  double worst_mix = 0.0;
  for (const double theta : {0.7, kPi / 2}) {
    const MixedVirtualState s1 = sum_over_outcomes_step(
        product_state(plus_state(), junk1), rotated_basis(t, 0, 1, theta, kPi),
        t);
    const Mat u = z_rotation(theta);
    const Mat expected = (2.0 / 3.0) * u * plus_state() * u.adjoint() +
                         (1.0 / 3.0) * plus_state();
    worst_mix = std::max(worst_mix, trace_distance(s1.rho, expected));
  }

  const double dtheta = 1e-3;
  const MixedVirtualState s1 = sum_over_outcomes_step(
      product_state(plus_state(), junk1), rotated_basis(t, 0, 1, dtheta, kPi),
      t);
  const Mat v = z_rotation((2.0 / 3.0) * dtheta);
  const double first_order =
      trace_distance(s1.rho, Mat(v * plus_state() * v.adjoint()));

  Outcome r;
  r.ok = worst_mix <= 1e-10 && first_order <= 1e-6;
  r.detail = "mixture dist = " + num(worst_mix) +
             ", reduced-angle dist = " + num(first_order);
  return r;
}

// 3. Compiled pi/2 rotation meets the 3e-2 budget and the error falls off
//    as 1/N over N = 50 .. 3200.
Outcome criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const MPSTensor t = aklt_tensor();
  const NuMatrix nu = calibrate_nu(t);

  const GateProgram p = compile_rotation(t, nu, 0, 1, kPi, kPi / 2, 1e-2);
  const MixedVirtualState out = run_program(p, plus_state(), t);
  const Mat ideal = ideal_rotation(t, 0, 1, kPi, kPi / 2);
  const double err = trace_distance(out.logical_reduced(),
                                    Mat(ideal * plus_state() * ideal.adjoint()));

  const std::vector<long long> ns = {50, 100, 200, 400, 800, 1600, 3200};
  const auto rows = error_scan(t, 0, 1, kPi / 2, ns, {0});
  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    lx.push_back(std::log(static_cast<double>(row.n)));
    ly.push_back(std::log(row.error));
  }
  const double slope = ls_slope(lx, ly);
  const double el = seconds_since(t0);

  Outcome r;
  r.ok = err <= 3e-2 && std::abs(slope + 1.0) <= 0.15 && el < 30.0;
  r.detail = "error = " + num(err) + ", slope = " + num(slope) + ", " +
             num(el) + " s";
  return r;
}

// 4. The junk-coupled state passes the same rotation budget, its one-step
//    execution matches the first-order gate, and the operational calibration
//    agrees with the spectral one to 1%.
Outcome criterion_4() {
  const MPSTensor t = kappa2_tensor();
  const NuMatrix nu = calibrate_nu(t);

  const GateProgram p = compile_rotation(t, nu, 0, 1, kPi, kPi / 2, 1e-2);
  const MixedVirtualState out = run_program(p, plus_state(), t);
  const Mat ideal = ideal_rotation(t, 0, 1, kPi, kPi / 2);
  const double err = trace_distance(out.logical_reduced(),
                                    Mat(ideal * plus_state() * ideal.adjoint()));

  const double residual =
      execute_and_compare(plus_state(), t, 0, 1, 1e-3, 0.9, 60, nu).residual;

  const double op = operational_nu_ratio(t, nu, 0, 1, kPi);
  const double spec = nu.modulus(0, 1) / nu.nu_scalar;
  const double mismatch = std::abs(op - spec) / spec;

  Outcome r;
  r.ok = err <= 3e-2 && residual <= 1e-5 && mismatch < 0.01;
  r.detail = "error = " + num(err) + ", first-order residual = " +
             num(residual) + ", nu mismatch = " + num(mismatch);
  return r;
}

// 5. Wire pumping drives the junk factor to its fixed point at the rate set
//    by the subleading transfer eigenvalue.
Outcome criterion_5() {
  const MPSTensor t = kappa2_tensor();
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  const MixedVirtualState s0 =
      product_state(plus_state(), Mat(0.5 * Mat::Identity(2, 2)));

  std::vector<double> ms, le;
  for (long long m = 5; m <= 30; ++m) {
    const MixedVirtualState sm = pump_fixed_point(s0, t, m);
    ms.push_back(static_cast<double>(m));
    le.push_back(std::log(trace_distance(sm.junk_reduced(), fp.rho_fix)));
  }
  const double rate = ls_slope(ms, le);
  const double expected = std::log(fp.lambda1);

  Outcome r;
  r.ok = std::abs(rate - expected) <= 0.05 * std::abs(expected);
  r.detail = "fitted rate = " + num(rate) + ", ln lambda1 = " + num(expected);
  return r;
}

// 6. Clock-shift irreps have orthogonal characters: Tr V(h) vanishes away
//    from the identity and equals sqrt|H| there.
Outcome criterion_6() {
  double worst = 0.0;
  for (long long d = 2; d <= 8; ++d) {
    const FiniteAbelianGroup g{{d, d}};
    const ProjectiveIrrep irrep = projective_irrep(g, weyl_cocycle(d));
    for (long long idx = 0; idx < g.size(); ++idx) {
      const double expect = (idx == 0) ? static_cast<double>(d) : 0.0;
      worst = std::max(worst,
                       std::abs(irrep.matrices[static_cast<size_t>(idx)]
                                    .trace() -
                                cx(expect, 0.0)));
    }
  }
  Outcome r;
  r.ok = worst <= 1e-10;
  r.detail = "max |Tr V(h) - sqrt|H| delta| = " + num(worst) + ", D = 2..8";
  return r;
}

// 7. Grid filling agrees with the oracle on every canonical triple, and the
//    staged schedule reproduces the reference milestones at D = 8, r = 1.
Outcome criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  int combos = 0;
  for (const long long d : {2, 3, 4, 5, 7, 8, 9}) {
    for (long long rr = 1; rr < d; ++rr) {
      if (std::gcd(rr, d) != 1) continue;
      ++combos;
      const LogicalOps ops = canonical_triple(d, rr);
      GridState g = grid_init(generator_set(ops, {0, 1, 2}), rr);
      const bool complete = fill_grid(g, rr);
      const ClosureReport oracle = brute_force_closure(ops, {0, 1, 2}, 1e-9);
      if (!complete || oracle.dim != d * d - 1 || !oracle.contains_su_d) {
        r.ok = false;
        r.detail = "mismatch at D=" + std::to_string(d) +
                   " r=" + std::to_string(rr);
        return r;
      }
    }
  }

  const ScheduleTrace trace =
      staged_schedule_fill(generator_set(canonical_triple(8, 1), {0, 1, 2}), 1);
  bool band1 = trace.after_first_band.marked_count() == 28;
  bool band2 = trace.after_second_band.marked_count() == 48;
  for (long long k = 0; k < 8; ++k) {
    band1 = band1 && trace.after_first_band.is_marked(1, k) &&
            trace.after_first_band.is_marked(k, 1);
    band2 = band2 && trace.after_second_band.is_marked(3, k) &&
            trace.after_second_band.is_marked(k, 3);
  }
  bool unlock = trace.unlock_used && trace.unlock.hermitian;
  bool hit = false;
  for (const auto& q : trace.unlock.newly_marked)
    hit = hit || (q[0] == 2 && q[1] == 4);
  unlock = unlock && hit;
  const double el = seconds_since(t0);

  r.ok = band1 && band2 && unlock && trace.complete && el < 60.0;
  r.detail = std::to_string(combos) + " (D,r) pairs, milestones " +
             std::to_string(trace.after_first_band.marked_count()) + "/" +
             std::to_string(trace.after_second_band.marked_count()) +
             "/63, unlock at (2,4): " + (unlock ? "yes" : "no") + ", " +
             num(el) + " s";
  return r;
}

// 8. With every wire character present, each prime-power block of the
//    symmetry closes on the full traceless algebra.
Outcome criterion_8() {
  struct Case {
    std::vector<long long> orders;
    Cocycle omega;
  };
  std::vector<Case> cases;
  for (const long long q : {2, 3, 4, 8, 9})
    cases.push_back({{q, q}, weyl_cocycle(q)});
  cases.push_back(
      {{2, 2, 3, 3}, product_cocycle(weyl_cocycle(2), weyl_cocycle(3))});

  int blocks = 0;
  for (const Case& c : cases) {
    const FiniteAbelianGroup g{c.orders};
    const ReachabilityReport rep =
        reachability_report(g, c.omega, all_characters(g), 1, 1e-9);
    for (const PrimeBlockReport& pb : rep.blocks) {
      ++blocks;
      long long full = 1;
      for (long long k = 0; k < 2 * pb.n; ++k) full *= pb.p;
      if (!pb.contains_su_pn || pb.oracle_dim < full - 1) {
        Outcome r;
        r.ok = false;
        r.detail = "block p=" + std::to_string(pb.p) +
                   " n=" + std::to_string(pb.n) + " dim " +
                   std::to_string(pb.oracle_dim);
        return r;
      }
    }
  }
  Outcome r;
  r.detail = std::to_string(blocks) + " prime-power blocks all full";
  return r;
}

// 9. Born-rule trajectories reproduce the exact channel on every Pauli axis
//    within shot noise; wire-only programs never touch the logical factor.
Outcome criterion_9() {
  const MPSTensor t = aklt_tensor();
  GateProgram p;
  p.steps.push_back(GateStep{rotated_basis(t, 0, 1, 0.3, kPi), 0});
  p.steps.push_back(GateStep{tilted_basis(t, 0, 2, 0.15, 0.7), 0});
  p.steps.push_back(GateStep{rotated_basis(t, 1, 2, 0.25, 1.3), 0});

  const long long shots = 100000;
  const auto s = sample_trajectories(p, plus_state(), t, shots, 12345, true);
  const Mat exact = run_program(p, plus_state(), t).logical_reduced();

  Outcome r;
  std::string axes;
  for (int a = 0; a < 3; ++a) {
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(shots));
    for (const Mat& st : s.shot_logical_states)
      vals.push_back((st * sigma(a)).trace().real());
    const double mean =
        std::accumulate(vals.begin(), vals.end(), 0.0) /
        static_cast<double>(shots);
    const double sd = bootstrap_sd(vals, 200, 99 + static_cast<uint64_t>(a));
    const double ex = (exact * sigma(a)).trace().real();
    const double pulls = std::abs(mean - ex) / sd;
    r.ok = r.ok && sd > 0.0 && pulls <= 5.0;
    axes += (a ? ", " : "") + num(pulls);
  }

  GateProgram wire;
  wire.steps.assign(3, GateStep{wire_basis(t), 0});
  const auto w = sample_trajectories(wire, plus_state(), t, 1000, 7, true);
  bool identical = w.shot_logical_states.size() == 1000;
  for (const Mat& st : w.shot_logical_states)
    identical = identical && (st - plus_state()).cwiseAbs().maxCoeff() == 0.0;

  r.ok = r.ok && identical;
  r.detail = "pulls = " + axes + " sd, wire shots identical: " +
             (identical ? "yes" : "no");
  return r;
}

// 10. Readout statistics are frame independent, normalized, and their k
//     dependence is bounded by the junk-gap decay. The readout functional is
//     the exact adjoint fixed point, so the k shift is zero up to roundoff;
//     the displaced junk factor below would expose any spurious dependence.
Outcome criterion_10() {
  const MPSTensor t = kappa2_tensor();
  Mat junk0 = Mat::Zero(2, 2);
  junk0(0, 0) = 1.0;
  const MixedVirtualState out = sum_over_outcomes_step(
      product_state(plus_state(), junk0), rotated_basis(t, 0, 1, 0.4, 0.9), t);
  const MeasurementBasis basis = tilted_basis(t, 0, 2, 0.2, 0.9);

  const auto probs = readout_probabilities(out, basis, t, 3);
  double sum = 0.0;
  for (const double v : probs) sum += v;
  const double sum_err = std::abs(sum - 1.0);

  double frame_dev = 0.0;
  const auto elems = wire_frame_elements(t);
  for (int lbl = 0; lbl < 3; ++lbl) {
    const Mat sig = kron(t.factorization->logical[static_cast<size_t>(lbl)],
                         Mat::Identity(2, 2));
    MixedVirtualState rotated = out;
    rotated.rho = sig * out.rho * sig.adjoint();
    const auto probs2 = readout_probabilities(
        rotated, adapt_basis(basis, t, elems[static_cast<size_t>(lbl)]), t, 3);
    for (size_t o = 0; o < probs.size(); ++o)
      frame_dev = std::max(frame_dev, std::abs(probs[o] - probs2[o]));
  }

  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  bool decays = true;
  double worst_ratio = 0.0;
  for (const long long k : {0, 5, 10, 15}) {
    const auto pk = readout_probabilities(out, basis, t, k);
    const auto pk10 = readout_probabilities(out, basis, t, k + 10);
    double dk = 0.0;
    for (size_t o = 0; o < pk.size(); ++o)
      dk = std::max(dk, std::abs(pk10[o] - pk[o]));
    const double bound = 2.0 * std::pow(fp.lambda1, static_cast<double>(k));
    worst_ratio = std::max(worst_ratio, dk / bound);
    decays = decays && dk <= bound;
  }

  Outcome r;
  r.ok = frame_dev <= 1e-10 && sum_err <= 1e-9 && decays;
  r.detail = "frame dev = " + num(frame_dev) + ", sum err = " + num(sum_err) +
             ", k-shift / gap bound = " + num(worst_ratio);
  return r;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"spin-1 calibration constants", criterion_1},
      {"single-step mixture and reduced angle", criterion_2},
      {"compiled rotation budget and 1/N scaling", criterion_3},
      {"junk-coupled gate and calibration cross-check", criterion_4},
      {"pumping decay at the junk gap rate", criterion_5},
      {"irrep trace orthogonality", criterion_6},
      {"grid filling against the closure oracle", criterion_7},
      {"prime-power blocks reach the full algebra", criterion_8},
      {"trajectory sampling statistics", criterion_9},
      {"readout invariance and pump dependence", criterion_10},
  };

  int failures = 0;
  int idx = 0;
  for (const Entry& e : entries) {
    ++idx;
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    if (!o.ok) ++failures;
    std::printf("%s  criterion %2d: %s (%s)\n", o.ok ? "PASS" : "FAIL", idx,
                e.name, o.detail.c_str());
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
