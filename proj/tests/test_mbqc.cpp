#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sptmbqc/mbqc.hpp"

using namespace sptmbqc;

namespace {

Mat sigma(int i) {
  Mat m(2, 2);
  if (i == 0) m << 0, 1, 1, 0;
  if (i == 1) m << 0, cx(0, -1), cx(0, 1), 0;
  if (i == 2) m << 1, 0, 0, -1;
  return m;
}

LogicalOps pauli_ops() {
  FiniteAbelianGroup g{{2, 2}};
  LogicalOps ops;
  ops.group = g;
  ops.dim = 2;
  const std::vector<std::vector<long long>> chars = {{1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::pair<long long, long long>> exps = {{1, 0}, {1, 1}, {0, 1}};
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

MPSTensor kappa2_tensor() {
  return spt_tensor(pauli_ops(), random_primitive_junk(3, 2, 21));
}

Mat plus_state() {
  Mat r(2, 2);
  r << 0.5, 0.5, 0.5, 0.5;
  return r;
}

// e^{-i alpha sigma_z / 2}
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

}  // namespace

TEST_CASE("tilted and rotated bases") {
  const MPSTensor t = aklt_tensor();

  const MeasurementBasis w = tilted_basis(t, 0, 1, 0.0, 0.3);
  CHECK(w.is_wire);
  CHECK((w.vectors - Mat::Identity(3, 3)).norm() == 0.0);

  // B(z,theta): {cos(t/2)|x> - sin(t/2)|y>, sin(t/2)|x> + cos(t/2)|y>, |z>}
  const double theta = 0.7;
  const MeasurementBasis b = rotated_basis(t, 0, 1, theta, kPi);
  Mat ref = Mat::Zero(3, 3);
  ref(0, 0) = std::cos(theta / 2);
  ref(1, 0) = -std::sin(theta / 2);
  ref(0, 1) = std::sin(theta / 2);
  ref(1, 1) = std::cos(theta / 2);
  ref(2, 2) = 1.0;
  CHECK((b.vectors - ref).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_NOTHROW(validate_basis(b, 1e-12));
  CHECK(b.byproduct_assignment == std::vector<int>{0, 1, 2});

  const MeasurementBasis b5 = rotated_basis(t, 0, 1, 0.5, kPi);
  const MeasurementBasis tb = tilted_basis(t, 0, 1, std::tan(0.25), kPi);
  CHECK((tb.vectors - b5.vectors).cwiseAbs().maxCoeff() < 1e-14);

  const MeasurementBasis generic = tilted_basis(t, 1, 2, 0.25, 0.9);
  CHECK((generic.vectors.adjoint() * generic.vectors - Mat::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  CHECK_THROWS_AS(tilted_basis(t, 0, 1, 0.31, 0.0), ValidationError);
  CHECK_THROWS_AS(tilted_basis(t, 1, 1, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(tilted_basis(t, 0, 3, 0.1, 0.0), ValidationError);

  MeasurementBasis bad = wire_basis(t);
  bad.vectors(0, 0) = 1.1;
  CHECK_THROWS_AS(validate_basis(bad), ValidationError);
}

TEST_CASE("byproduct group elements and basis adaptation") {
  const MPSTensor t = aklt_tensor();
  const auto elems = wire_frame_elements(t);
  CHECK(elems[0] == GroupElement{0, 1});  // sigma_x = X
  CHECK(elems[1] == GroupElement{1, 1});  // sigma_y ~ XZ
  CHECK(elems[2] == GroupElement{1, 0});  // sigma_z = Z

  const MeasurementBasis w = wire_basis(t);
  const MeasurementBasis a = adapt_basis(w, t, GroupElement{0, 1});
  Mat u = Mat::Zero(3, 3);
  u(0, 0) = 1.0;   // chi_x((0,1)) = +1
  u(1, 1) = -1.0;  // chi_y((0,1)) = -1
  u(2, 2) = -1.0;  // chi_z((0,1)) = -1
  CHECK((a.vectors - u).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_FALSE(a.is_wire);
  CHECK(adapt_basis(w, t, GroupElement{0, 0}).is_wire);
}

TEST_CASE("one finite-angle step reproduces the exact mixture") {
  const MPSTensor t = aklt_tensor();
  const Mat junk1 = Mat::Identity(1, 1);
  for (const double theta : {0.7, kPi / 2}) {
    CAPTURE(theta);
    const MixedVirtualState s0 = product_state(plus_state(), junk1);
    double pre = 0.0;
    const MixedVirtualState s1 = sum_over_outcomes_step(
        s0, rotated_basis(t, 0, 1, theta, kPi), t, &pre);
    CHECK(std::abs(pre - 1.0) < 1e-12);

    const Mat u = z_rotation(theta);
    const Mat expected = (2.0 / 3.0) * u * plus_state() * u.adjoint() +
                         (1.0 / 3.0) * plus_state();
    CHECK(trace_distance(s1.rho, expected) < 1e-12);
  }
}

TEST_CASE("small tilt matches the reduced-angle unitary") {
  const MPSTensor t = aklt_tensor();
  const double dtheta = 1e-3;
  const MixedVirtualState s0 = product_state(plus_state(), Mat::Identity(1, 1));
  const MixedVirtualState s1 =
      sum_over_outcomes_step(s0, rotated_basis(t, 0, 1, dtheta, kPi), t);
  const Mat v = z_rotation((2.0 / 3.0) * dtheta);
  CHECK(trace_distance(s1.rho, Mat(v * plus_state() * v.adjoint())) < 1e-6);
}

TEST_CASE("wire steps act on the junk factor only") {
  const MPSTensor aklt = aklt_tensor();
  const MixedVirtualState s0 = product_state(plus_state(), Mat::Identity(1, 1));
  const MixedVirtualState s1 = sum_over_outcomes_step(s0, wire_basis(aklt), aklt);
  CHECK(trace_distance(s0.rho, s1.rho) < 1e-14);
  CHECK(trace_distance(pump_fixed_point(s0, aklt, 25).rho, s0.rho) == 0.0);

  const MPSTensor t = kappa2_tensor();
  Rng rng(3);
  const Mat x = random_density(2, rng);
  const MixedVirtualState m0 = product_state(plus_state(), x);
  const MixedVirtualState m1 = sum_over_outcomes_step(m0, wire_basis(t), t);
  CHECK((m1.logical_reduced() - plus_state()).norm() < 1e-12);
  const Mat ex = Channel{t.factorization->junk}.apply(x);
  CHECK((m1.junk_reduced() - ex).norm() < 1e-12);
  const MixedVirtualState m25 = pump_fixed_point(m0, t, 25);
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  CHECK(trace_distance(m25.junk_reduced(), fp.rho_fix) < 1e-6);
}

TEST_CASE("calibration constants") {
  const NuMatrix nu = calibrate_nu(aklt_tensor());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(nu.nu(i, j) - cx(1.0 / 3.0, 0.0)) < 1e-13);
      CHECK_FALSE(nu.is_dead(i, j));
    }
  CHECK(std::abs(nu.nu_scalar - 1.0) < 1e-12);

  // kappa = 1 scalars: nu_ij = b_i conj(b_j)
  const std::vector<double> b = {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)};
  std::vector<Mat> scalars;
  for (const double v : b) scalars.push_back(Mat::Constant(1, 1, v));
  const NuMatrix nb = calibrate_nu(spt_tensor(pauli_ops(), scalars));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(nb.nu(i, j) - cx(b[static_cast<size_t>(i)] *
                                          b[static_cast<size_t>(j)],
                                      0.0)) < 1e-12);
  CHECK(std::abs(nb.nu_scalar - 1.0) < 1e-12);

  const std::string csv = calibration_csv(nu);
  CHECK(csv.rfind("i,j,re,im,abs,phase,dead\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("predicted gate") {
  const MPSTensor t = aklt_tensor();
  const NuMatrix nu = calibrate_nu(t);

  const double dtheta = 0.01;
  const Mat gate = predicted_gate(t, 0, 1, dtheta, kPi, nu);
  CHECK((gate - z_rotation(2.0 * (2.0 / 3.0) * dtheta / 2.0 * 2.0))
            .cwiseAbs()
            .maxCoeff() < 1e-13);  // e^{-i (2/3) 2 dtheta sigma_z / 2}

  const Mat g2 = predicted_gate(t, 1, 2, 0.2, 0.9, nu);
  CHECK((g2.adjoint() * g2 - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK((predicted_gate(t, 0, 1, 0.0, 0.4, nu) - Mat::Identity(2, 2)).norm() <
        1e-14);

  NuMatrix dead = nu;
  dead.nu(0, 1) = cx(1e-9, 0.0);
  CHECK_THROWS_AS(predicted_gate(t, 0, 1, 0.1, 0.0, dead), DeadDirectionError);
}

TEST_CASE("first-order execution against the prediction") {
  const MPSTensor aklt = aklt_tensor();
  const NuMatrix nu = calibrate_nu(aklt);

  const auto r1 = execute_and_compare(plus_state(), aklt, 0, 1, 1e-3, kPi, 0, nu);
  CHECK(r1.residual < 1e-5);
  const auto r2 = execute_and_compare(plus_state(), aklt, 0, 1, 2e-3, kPi, 0, nu);
  CHECK(r2.residual / r1.residual > 3.3);
  CHECK(r2.residual / r1.residual < 4.7);
  CHECK(execute_and_compare(plus_state(), aklt, 0, 1, 0.0, kPi, 0, nu).residual <
        1e-12);

  const MPSTensor t = kappa2_tensor();
  const NuMatrix nu2 = calibrate_nu(t);
  const auto g1 = execute_and_compare(plus_state(), t, 0, 1, 1e-3, 0.9, 60, nu2);
  CHECK(g1.residual < 1e-5);
  const auto g0 = execute_and_compare(plus_state(), t, 0, 1, 0.0, 0.9, 40, nu2);
  CHECK(g0.residual < 1e-10);
}

TEST_CASE("rotation compilation") {
  const MPSTensor t = aklt_tensor();
  const NuMatrix nu = calibrate_nu(t);

  const GateProgram p = compile_rotation(t, nu, 0, 1, kPi, kPi / 2, 1e-2);
  CHECK(p.n_steps == 247);  // ceil((pi/2)^2 / 1e-2)
  CHECK(p.pump_m == 0);
  CHECK(p.predicted_cost == 247.0);
  CHECK(p.steps.size() == 247);
  const double beta = (kPi / 2 / 247.0) * 3.0 / 2.0;  // (3/2)(theta/N)
  const MeasurementBasis ref = rotated_basis(t, 0, 1, beta, -kPi);
  CHECK((p.steps[0].basis.vectors - ref.vectors).cwiseAbs().maxCoeff() < 1e-12);

  const GateProgram half = compile_rotation(t, nu, 0, 1, kPi, kPi / 2, 5e-3);
  CHECK(std::abs(half.predicted_cost / p.predicted_cost - 2.0) < 0.01);

  const GateProgram idp = compile_rotation(t, nu, 0, 1, kPi, 0.0, 1e-2);
  CHECK(idp.n_steps == 1);
  CHECK(idp.steps[0].basis.is_wire);

  const MPSTensor k2 = kappa2_tensor();
  const NuMatrix nu2 = calibrate_nu(k2);
  const GateProgram p2 = compile_rotation(k2, nu2, 0, 1, kPi, kPi / 2, 1e-2);
  const auto fp = fixed_point_data(*transfer_channels(k2).junk);
  const long long m_expect = static_cast<long long>(std::ceil(
      std::max(2.0 * fp.xi_tilde * std::log(static_cast<double>(p2.n_steps)),
               1.0)));
  CHECK(p2.pump_m == m_expect);
  CHECK(p2.pump_m >= 1);
  CHECK(p2.predicted_cost ==
        static_cast<double>(p2.n_steps) * static_cast<double>(p2.pump_m + 1));

  CHECK_THROWS_AS(compile_rotation(t, nu, 0, 1, kPi, -0.1, 1e-2),
                  ValidationError);
}

TEST_CASE("compiled programs hit their error budget") {
  const MPSTensor t = aklt_tensor();
  const NuMatrix nu = calibrate_nu(t);

  const Mat ideal = ideal_rotation(t, 0, 1, kPi, kPi / 2);
  CHECK((ideal - z_rotation(kPi / 2)).cwiseAbs().maxCoeff() < 1e-14);

  const GateProgram p = compile_rotation(t, nu, 0, 1, kPi, kPi / 2, 1e-2);
  const MixedVirtualState out = run_program(p, plus_state(), t);
  const Mat target = ideal * plus_state() * ideal.adjoint();
  CHECK(trace_distance(out.logical_reduced(), target) <= 3e-2);

  // empty program leaves the product state untouched
  const MixedVirtualState empty = run_program(GateProgram{}, plus_state(), t);
  CHECK((empty.rho - plus_state()).cwiseAbs().maxCoeff() < 1e-15);

  // two theta/2 programs compose to one theta program within budget
  const GateProgram ph = compile_rotation(t, nu, 0, 1, kPi, kPi / 4, 1e-2);
  const Mat once = run_program(ph, plus_state(), t).logical_reduced();
  const Mat twice = run_program(ph, once, t).logical_reduced();
  CHECK(trace_distance(twice, out.logical_reduced()) <= 2e-2);

  // generic-phase kappa = 2 rotation test
  const MPSTensor k2 = kappa2_tensor();
  const NuMatrix nu2 = calibrate_nu(k2);
  const GateProgram p2 = compile_rotation(k2, nu2, 0, 1, kPi, kPi / 2, 1e-2);
  const MixedVirtualState out2 = run_program(p2, plus_state(), k2);
  const Mat ideal2 = ideal_rotation(k2, 0, 1, kPi, kPi / 2);
  CHECK(trace_distance(out2.logical_reduced(),
                       Mat(ideal2 * plus_state() * ideal2.adjoint())) <= 3e-2);
}

TEST_CASE("trajectory sampling is seeded and Born-consistent") {
  const MPSTensor t = aklt_tensor();
  GateProgram p;
  p.steps.assign(1, GateStep{rotated_basis(t, 0, 1, 0.1, kPi), 0});

  const auto a = sample_trajectories(p, plus_state(), t, 200, 17);
  const auto b = sample_trajectories(p, plus_state(), t, 200, 17);
  CHECK(a.outcome_log_hash == b.outcome_log_hash);
  CHECK(a.outcome_counts == b.outcome_counts);
  CHECK((a.rho_bar.rho - b.rho_bar.rho).cwiseAbs().maxCoeff() == 0.0);
  const auto c = sample_trajectories(p, plus_state(), t, 200, 18);
  CHECK(a.outcome_log_hash != c.outcome_log_hash);

  long long total = 0;
  for (const long long n : a.outcome_counts[0]) total += n;
  CHECK(total == 200);

  // Born statistics: 2e4 shots against the exact sum over outcomes, on a
  // two-axis program so every Pauli expectation has genuine shot noise
  GateProgram p2;
  p2.steps.push_back(GateStep{rotated_basis(t, 0, 1, 0.3, kPi), 0});
  p2.steps.push_back(GateStep{tilted_basis(t, 0, 2, 0.15, 0.7), 0});
  const long long shots = 20000;
  const auto s = sample_trajectories(p2, plus_state(), t, shots, 5, true);
  REQUIRE(s.shot_logical_states.size() == static_cast<size_t>(shots));
  const Mat exact = run_program(p2, plus_state(), t).logical_reduced();
  CHECK(std::abs(s.rho_bar.rho.trace() - cx(1.0, 0.0)) < 1e-12);
  for (int a3 = 0; a3 < 3; ++a3) {
    CAPTURE(a3);
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(shots));
    for (const Mat& st : s.shot_logical_states)
      vals.push_back((st * sigma(a3)).trace().real());
    double mean = 0.0;
    for (const double v : vals) mean += v;
    mean /= static_cast<double>(shots);
    const double sd = bootstrap_sd(vals, 200, 99);
    const double ex = (exact * sigma(a3)).trace().real();
    CHECK(sd > 0.0);
    CHECK(std::abs(mean - ex) <= 5.0 * sd);
  }
}

TEST_CASE("wire-only trajectories never touch the logical factor") {
  const MPSTensor t = kappa2_tensor();
  GateProgram p;
  p.steps.assign(3, GateStep{wire_basis(t), 1});
  const auto s = sample_trajectories(p, plus_state(), t, 200, 11, true);
  REQUIRE(s.shot_logical_states.size() == 200);
  for (const Mat& st : s.shot_logical_states)
    CHECK((st - plus_state()).cwiseAbs().maxCoeff() == 0.0);

  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  CHECK(trace_distance(s.rho_bar.junk_reduced(), fp.rho_fix) < 0.25);
  CHECK((s.rho_bar.logical_reduced() - plus_state()).norm() < 1e-12);
}

TEST_CASE("readout probabilities") {
  const MPSTensor aklt = aklt_tensor();
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1.0;
  const MixedVirtualState s = product_state(zero, Mat::Identity(1, 1));
  const auto p = readout_probabilities(s, wire_basis(aklt), aklt, 0);
  REQUIRE(p.size() == 3);
  for (const double v : p) CHECK(std::abs(v - 1.0 / 3.0) < 1e-12);

  const MPSTensor t = kappa2_tensor();
  const NuMatrix nu = calibrate_nu(t);
  const GateProgram prog = compile_rotation(t, nu, 0, 1, kPi, 0.3, 1e-2);
  const MixedVirtualState out = run_program(prog, plus_state(), t);
  const MeasurementBasis basis = tilted_basis(t, 0, 2, 0.2, 0.9);

  const auto probs = readout_probabilities(out, basis, t, 3);
  double sum = 0.0;
  for (const double v : probs) sum += v;
  CHECK(std::abs(sum - 1.0) < 1e-9);

  // frame / basis co-transformation leaves every probability unchanged
  const auto elems = wire_frame_elements(t);
  for (int lbl = 0; lbl < 3; ++lbl) {
    CAPTURE(lbl);
    const Mat sig =
        kron(t.factorization->logical[static_cast<size_t>(lbl)],
             Mat::Identity(2, 2));
    MixedVirtualState rotated = out;
    rotated.rho = sig * out.rho * sig.adjoint();
    const auto probs2 = readout_probabilities(
        rotated, adapt_basis(basis, t, elems[static_cast<size_t>(lbl)]), t, 3);
    for (size_t o = 0; o < probs.size(); ++o)
      CHECK(std::abs(probs[o] - probs2[o]) < 1e-10);
  }

  // pump-length dependence is bounded by the junk gap
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  const auto p5 = readout_probabilities(out, basis, t, 5);
  const auto p15 = readout_probabilities(out, basis, t, 15);
  for (size_t o = 0; o < p5.size(); ++o)
    CHECK(std::abs(p5[o] - p15[o]) <= std::pow(fp.lambda1, 5.0));
}

TEST_CASE("error scan: 1/N scaling and CSV") {
  const MPSTensor t = aklt_tensor();
  const std::vector<long long> ns = {50, 100, 200, 400, 800, 1600, 3200};
  const auto rows = error_scan(t, 0, 1, kPi / 2, ns, {0});
  REQUIRE(rows.size() == ns.size());
  CHECK(rows.front().error > rows.back().error);

  std::vector<double> lx, ly;
  for (const auto& r : rows) {
    lx.push_back(std::log(static_cast<double>(r.n)));
    ly.push_back(std::log(r.error));
  }
  const double slope = ls_slope(lx, ly);
  CHECK(slope < -0.85);
  CHECK(slope > -1.15);

  const std::string csv = scan_csv(rows);
  CHECK(csv.rfind("N,m,error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
}

TEST_CASE("pumping error decays at the junk gap rate") {
  const MPSTensor t = kappa2_tensor();
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  const MixedVirtualState s0 =
      product_state(plus_state(), Mat(0.5 * Mat::Identity(2, 2)));

  std::vector<double> ms, le;
  for (long long m = 5; m <= 30; ++m) {
    const MixedVirtualState sm = pump_fixed_point(s0, t, m);
    const double err = trace_distance(sm.junk_reduced(), fp.rho_fix);
    ms.push_back(static_cast<double>(m));
    le.push_back(std::log(err));
  }
  const double rate = ls_slope(ms, le);
  const double expected = std::log(fp.lambda1);
  CHECK(std::abs(rate - expected) < 0.05 * std::abs(expected));
}

TEST_CASE("operational calibration matches the spectral one") {
  const MPSTensor aklt = aklt_tensor();
  const NuMatrix nu = calibrate_nu(aklt);
  const double op = operational_nu_ratio(aklt, nu, 0, 1, kPi);
  const double spec = nu.modulus(0, 1) / nu.nu_scalar;
  CHECK(std::abs(op - spec) / spec < 0.01);

  const MPSTensor t = kappa2_tensor();
  const NuMatrix nu2 = calibrate_nu(t);
  const double op2 = operational_nu_ratio(t, nu2, 0, 1, kPi);
  const double spec2 = nu2.modulus(0, 1) / nu2.nu_scalar;
  CHECK(std::abs(op2 - spec2) / spec2 < 0.01);
}

TEST_CASE("state validation") {
  const MixedVirtualState good = product_state(plus_state(), Mat::Identity(1, 1));
  CHECK_NOTHROW(validate_state(good));

  MixedVirtualState bad = good;
  bad.rho *= 1.5;
  CHECK_THROWS_AS(validate_state(bad), ValidationError);

  MixedVirtualState neg = good;
  neg.rho = Mat::Zero(2, 2);
  neg.rho(0, 0) = 1.5;
  neg.rho(1, 1) = -0.5;
  CHECK_THROWS_AS(validate_state(neg), ValidationError);
}
