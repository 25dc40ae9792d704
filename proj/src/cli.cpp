#include "sptmbqc/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sptmbqc/lie_closure.hpp"
#include "sptmbqc/mbqc.hpp"

namespace sptmbqc {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f << content;
  if (!f.good()) throw ValidationError("failed writing: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open input file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<long long> parse_ll_list(const std::string& spec) {
  std::vector<long long> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (...) {
      throw ValidationError("not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) throw ValidationError("not an integer: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty integer list");
  return out;
}

// Square-form orders as adjacent equal pairs; composite orders split into
// coprime prime-power blocks (6,6 -> 2,2,3,3), which the standard cocycle,
// the irrep and the prime restriction all operate on.
std::vector<long long> normalize_square_orders(
    const std::vector<long long>& orders) {
  if (orders.empty() || orders.size() % 2 != 0)
    throw ValidationError("group needs an even number of factor orders");
  std::vector<long long> out;
  for (size_t k = 0; k < orders.size(); k += 2) {
    if (orders[k] != orders[k + 1])
      throw ValidationError("group factors must pair up as Z_q x Z_q");
    if (orders[k] < 2) throw ValidationError("factor orders must be >= 2");
    for (const auto& [p, mult] : factorize(orders[k])) {
      long long q = 1;
      for (long long e = 0; e < mult; ++e) q *= p;
      out.push_back(q);
      out.push_back(q);
    }
  }
  return out;
}

// spec: "weyl" (standard maximally non-commutative form), "trivial", or a
// path to an explicit phase-table JSON. orders is normalized in place for
// the weyl form and taken from the table for explicit files.
Cocycle resolve_cocycle(const std::string& spec,
                        std::vector<long long>& orders) {
  if (spec == "weyl") {
    orders = normalize_square_orders(orders);
    Cocycle omega = weyl_cocycle(orders[0]);
    for (size_t k = 2; k < orders.size(); k += 2)
      omega = product_cocycle(omega, weyl_cocycle(orders[k]));
    return omega;
  }
  if (spec == "trivial") return trivial_cocycle(FiniteAbelianGroup{orders});
  Cocycle omega = cocycle_from_json(read_file(spec));
  if (!orders.empty() && omega.group.orders != orders)
    throw ValidationError("cocycle table group does not match --group");
  orders = omega.group.orders;
  return omega;
}

std::vector<Character> resolve_characters(const std::string& spec,
                                          const FiniteAbelianGroup& g) {
  if (spec == "all") return all_characters(g);
  if (spec == "nontrivial") {
    std::vector<Character> out;
    for (const Character& c : all_characters(g))
      if (!c.is_trivial()) out.push_back(c);
    return out;
  }
  std::vector<Character> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    std::vector<long long> exps = parse_ll_list(tok);
    if (static_cast<int>(exps.size()) != g.rank())
      throw ValidationError(
          "character tuple needs one exponent per factor; group has rank " +
          std::to_string(g.rank()));
    for (size_t k = 0; k < exps.size(); ++k)
      exps[k] = ((exps[k] % g.orders[k]) + g.orders[k]) % g.orders[k];
    out.push_back(Character{exps});
  }
  if (out.empty()) throw ValidationError("empty character list");
  return out;
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-15) throw NumericalError("degenerate slope fit");
  return (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------- build --

struct BuildOpts {
  std::string preset;
  std::string group = "2,2";
  std::string cocycle = "weyl";
  std::string chars = "nontrivial";
  long long kappa = 1;
  unsigned long long seed = 1;
  std::string out = "tensor.json";
  std::string report;
};

int cmd_build(const BuildOpts& o, std::ostream& out) {
  const std::string config = "build|preset=" + o.preset + "|group=" + o.group +
                             "|cocycle=" + o.cocycle + "|chars=" + o.chars +
                             "|kappa=" + std::to_string(o.kappa) +
                             "|seed=" + std::to_string(o.seed);
  const std::string hash = hex64(fnv1a(config));

  MPSTensor t;
  FiniteAbelianGroup g;
  Cocycle omega;
  if (o.preset == "aklt") {
    t = aklt_tensor();
    g = t.symmetry_group;
    omega = weyl_cocycle(2);
  } else {
    std::vector<long long> orders;
    std::string cocycle_spec = o.cocycle;
    std::string chars_spec = o.chars;
    if (!o.preset.empty()) {
      if (o.preset.rfind("weyl-", 0) != 0)
        throw ValidationError("unknown preset: " + o.preset);
      const long long d = parse_ll_list(o.preset.substr(5)).at(0);
      orders = {d, d};
      cocycle_spec = "weyl";
      chars_spec = "all";
    } else {
      orders = parse_ll_list(o.group);
    }
    omega = resolve_cocycle(cocycle_spec, orders);
    g = FiniteAbelianGroup{orders};
    const ProjectiveIrrep irrep = projective_irrep(g, omega);
    const std::vector<Character> chars = resolve_characters(chars_spec, g);
    const LogicalOps ops = logical_ops_for_rep(irrep, chars);
    const std::vector<Mat> junk = random_primitive_junk(
        static_cast<long long>(chars.size()), o.kappa, o.seed);
    t = spt_tensor(ops, junk);
  }

  validate_tensor(t);
  const double violation = symmetry_check(t, g, projective_irrep(g, omega));
  const TransferChannels tc = transfer_channels(t);
  const ChannelSpectrum sp = channel_spectrum(tc.full);
  double lambda1 = 0.0;
  double xi = 0.0;
  if (t.junk_dim > 1) {
    const FixedPointData fp = fixed_point_data(*tc.junk);
    lambda1 = fp.lambda1;
    xi = fp.xi_tilde;
  }

  write_file(o.out, tensor_to_json(t));
  out << "wrote " << o.out << " (d=" << t.phys_dim << ", D=" << t.logical_dim
      << ", kappa=" << t.junk_dim << ")\n";
  out << "symmetry violation: " << num(violation) << "\n";
  out << "transfer spectrum |lambda|:";
  for (size_t k = 0; k < sp.pairs.size() && k < 4; ++k)
    out << " " << num(std::abs(sp.pairs[k].value));
  out << "\n";
  if (t.junk_dim > 1)
    out << "junk lambda1: " << num(lambda1) << "  xi~: " << num(xi) << "\n";
  out << "config_hash: " << hash << "\n";

  if (!o.report.empty()) {
    nlohmann::json j;
    j["schema"] = "sptmbqc.report.build";
    j["version"] = 1;
    j["config_hash"] = hash;
    j["tensor_file"] = o.out;
    j["phys_dim"] = t.phys_dim;
    j["logical_dim"] = t.logical_dim;
    j["junk_dim"] = t.junk_dim;
    j["symmetry_violation"] = violation;
    nlohmann::json spec_arr = nlohmann::json::array();
    for (const auto& pr : sp.pairs) spec_arr.push_back(std::abs(pr.value));
    j["transfer_spectrum"] = spec_arr;
    if (t.junk_dim > 1) {
      j["lambda1"] = lambda1;
      j["xi_tilde"] = xi;
    }
    write_file(o.report, j.dump(2));
  }
  return 0;
}

// ------------------------------------------------------------ calibrate --

struct CalibrateOpts {
  std::string tensor;
  double phi = kPi;
  std::string out_csv = "calibration.csv";
  std::string out_json = "calibration.json";
};

int cmd_calibrate(const CalibrateOpts& o, std::ostream& out) {
  const std::string text = read_file(o.tensor);
  const std::string config = "calibrate|tensor_hash=" + hex64(fnv1a(text)) +
                             "|phi=" + num(o.phi);
  const std::string hash = hex64(fnv1a(config));

  const MPSTensor t = tensor_from_json(text);
  const NuMatrix nu = calibrate_nu(t);
  const int d = static_cast<int>(nu.nu.rows());

  write_file(o.out_csv, calibration_csv(nu));

  nlohmann::json j;
  j["schema"] = "sptmbqc.report.calibrate";
  j["version"] = 1;
  j["config_hash"] = hash;
  j["nu_scalar"] = nu.nu_scalar;
  nlohmann::json entries = nlohmann::json::array();
  int dead = 0;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      nlohmann::json e;
      e["i"] = i;
      e["j"] = k;
      e["re"] = nu.nu(i, k).real();
      e["im"] = nu.nu(i, k).imag();
      e["abs"] = nu.modulus(i, k);
      e["phase"] = nu.phase(i, k);
      e["dead"] = nu.is_dead(i, k);
      dead += nu.is_dead(i, k);
      entries.push_back(std::move(e));
    }
  j["entries"] = std::move(entries);

  // operational cross-check per live pair
  nlohmann::json ops = nlohmann::json::array();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int k = i + 1; k < d; ++k) {
      if (nu.is_dead(i, k)) continue;
      const double spectral = nu.modulus(i, k) / nu.nu_scalar;
      const double operational = operational_nu_ratio(t, nu, i, k, o.phi);
      const double rel = std::abs(operational - spectral) / spectral;
      worst = std::max(worst, rel);
      nlohmann::json e;
      e["i"] = i;
      e["j"] = k;
      e["spectral"] = spectral;
      e["operational"] = operational;
      e["rel_diff"] = rel;
      ops.push_back(std::move(e));
    }
  j["operational"] = std::move(ops);
  j["max_rel_diff"] = worst;
  write_file(o.out_json, j.dump(2));

  out << "nu scalar: " << num(nu.nu_scalar) << "\n";
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      if (nu.is_dead(i, k))
        out << "dead direction: nu[" << i << "][" << k << "]\n";
  out << "dead entries: " << dead << "\n";
  out << "max spectral vs operational mismatch: " << num(worst) << "\n";
  out << "wrote " << o.out_csv << ", " << o.out_json << "\n";
  out << "config_hash: " << hash << "\n";
  return 0;
}

// ----------------------------------------------------------------- gate --

struct GateOpts {
  std::string tensor;
  int i = 0;
  int j = 1;
  double phi = kPi;
  double theta = 0.0;
  double eps = 1e-2;
  std::string report;
};

Mat probe_from_generator(const MPSTensor& t, int i, int j, double phi) {
  const auto& c = t.factorization->logical;
  const Mat cid = c[static_cast<size_t>(i)].adjoint();
  const Mat w = cid * c[static_cast<size_t>(j)];
  const Mat wd = w.adjoint();
  const cx ph = std::polar(1.0, phi);
  const Mat h = cx(0.0, 0.5) * (ph * w - std::conj(ph) * wd);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec v = es.eigenvectors().col(0) +
          es.eigenvectors().col(es.eigenvectors().cols() - 1);
  v.normalize();
  return v * v.adjoint();
}

int cmd_gate(const GateOpts& o, std::ostream& out) {
  const std::string text = read_file(o.tensor);
  const std::string config = "gate|tensor_hash=" + hex64(fnv1a(text)) +
                             "|i=" + std::to_string(o.i) +
                             "|j=" + std::to_string(o.j) + "|phi=" + num(o.phi) +
                             "|theta=" + num(o.theta) + "|eps=" + num(o.eps);
  const std::string hash = hex64(fnv1a(config));

  const MPSTensor t = tensor_from_json(text);
  const NuMatrix nu = calibrate_nu(t);
  const GateProgram p = compile_rotation(t, nu, o.i, o.j, o.phi, o.theta, o.eps);

  const Mat rho0 = probe_from_generator(t, o.i, o.j, o.phi);
  const MixedVirtualState res = run_program(p, rho0, t);
  const Mat u = ideal_rotation(t, o.i, o.j, o.phi, o.theta);
  const Mat rotated = u * rho0 * u.adjoint();
  const double err = trace_distance(res.logical_reduced(), rotated);

  out << "steps N: " << p.n_steps << "\n";
  out << "pump m: " << p.pump_m << "\n";
  out << "cost N(m+1): " << num(p.predicted_cost) << "\n";
  out << "measured error: " << num(err) << "\n";
  out << "config_hash: " << hash << "\n";

  if (!o.report.empty()) {
    nlohmann::json j;
    j["schema"] = "sptmbqc.report.gate";
    j["version"] = 1;
    j["config_hash"] = hash;
    j["i"] = o.i;
    j["j"] = o.j;
    j["phi"] = o.phi;
    j["theta"] = o.theta;
    j["eps"] = o.eps;
    j["n_steps"] = p.n_steps;
    j["pump_m"] = p.pump_m;
    j["cost"] = p.predicted_cost;
    j["measured_error"] = err;
    write_file(o.report, j.dump(2));
  }
  return 0;
}

// -------------------------------------------------------------- closure --

struct ClosureOpts {
  std::string group;
  std::string cocycle = "weyl";
  std::string chars = "all";
  long long block = 1;
  long long triple = 0;  // 0 = disabled, else the canonical r
  std::string strategy = "saturate";
  double tol = 1e-9;
  std::string out_json;
};

void print_schedule(const ScheduleTrace& trace, std::ostream& out) {
  out << "stage 1, X/Z saturation:\n" << trace.after_first_band.render();
  out << "stage 2, after first Y round:\n" << trace.after_second_band.render();
  if (trace.unlock_used) {
    out << "hermitian unlock: X at (" << trace.unlock.at[0] << ","
        << trace.unlock.at[1] << ") inspecting (" << trace.unlock.support[0]
        << "," << trace.unlock.support[1] << ") marks";
    for (const auto& q : trace.unlock.newly_marked)
      out << " (" << q[0] << "," << q[1] << ")";
    out << "\n";
  }
  out << "final:\n" << trace.final_state.render();
}

int cmd_closure(const ClosureOpts& o, std::ostream& out) {
  if (o.strategy != "saturate" && o.strategy != "staged")
    throw ValidationError("--strategy must be saturate or staged");
  const std::string config =
      "closure|group=" + o.group + "|cocycle=" + o.cocycle +
      "|chars=" + o.chars + "|block=" + std::to_string(o.block) +
      "|triple=" + std::to_string(o.triple) + "|strategy=" + o.strategy +
      "|tol=" + num(o.tol);
  const std::string hash = hex64(fnv1a(config));

  std::vector<long long> orders = parse_ll_list(o.group);

  if (o.triple > 0) {
    long long size = 1;
    for (long long q : orders) size *= q;
    const long long d = std::llround(std::sqrt(static_cast<double>(size)));
    if (d * d != size || d < 2)
      throw ValidationError("group order must be a square, got " +
                            std::to_string(size));
    const LogicalOps ops = canonical_triple(d, o.triple);
    const GeneratorSet gs = generator_set(ops, {0, 1, 2});
    const ClosureReport oracle = brute_force_closure(ops, {0, 1, 2}, o.tol);

    bool complete = false;
    std::string final_render;
    long long moves = 0;
    if (o.strategy == "staged") {
      const ScheduleTrace trace = staged_schedule_fill(gs, o.triple);
      print_schedule(trace, out);
      complete = trace.complete;
      final_render = trace.final_state.render();
      moves = static_cast<long long>(trace.final_state.move_log.size());
    } else {
      GridState g = grid_init(gs, o.triple);
      complete = fill_grid(g, o.triple);
      final_render = g.render();
      moves = static_cast<long long>(g.move_log.size());
      out << final_render;
    }
    if (complete != oracle.contains_su_d)
      throw InconsistentVerdictError("grid and oracle verdicts disagree");
    out << "grid complete: " << (complete ? "yes" : "no") << " ("
        << moves << " moves)\n";
    out << "oracle dim: " << oracle.dim << " of " << d * d - 1
        << (oracle.contains_su_d ? " -> full su" : " -> proper subalgebra")
        << "\n";
    out << "config_hash: " << hash << "\n";

    if (!o.out_json.empty()) {
      nlohmann::json j;
      j["schema"] = "sptmbqc.report.closure";
      j["version"] = 1;
      j["config_hash"] = hash;
      j["mode"] = "triple";
      j["d"] = d;
      j["r"] = o.triple;
      j["strategy"] = o.strategy;
      j["grid_complete"] = complete;
      j["oracle_dim"] = oracle.dim;
      j["contains_su_d"] = oracle.contains_su_d;
      j["grid"] = final_render;
      write_file(o.out_json, j.dump(2));
    }
    return 0;
  }

  if (o.strategy == "staged")
    throw ValidationError("--strategy staged requires --triple");

  Cocycle omega = resolve_cocycle(o.cocycle, orders);
  const FiniteAbelianGroup g{orders};
  const std::vector<Character> present = resolve_characters(o.chars, g);
  const ReachabilityReport rep =
      reachability_report(g, omega, present, o.block, o.tol);

  for (const PrimeBlockReport& pb : rep.blocks) {
    out << "p=" << pb.p << " n=" << pb.n << " block Z_" << pb.block_q
        << " x Z_" << pb.block_q << ": oracle dim " << pb.oracle_dim
        << (pb.contains_su_block ? " (full su)" : " (proper subalgebra)")
        << ", grid ";
    if (!pb.grid_ran)
      out << "abstained\n";
    else
      out << (pb.grid_complete ? "complete" : "incomplete") << " in "
          << pb.move_count << " moves\n";
    if (pb.grid_ran) out << pb.grid_render;
  }
  out << "all blocks full: " << (rep.all_blocks_full ? "yes" : "no") << "\n";
  out << "config_hash: " << hash << "\n";

  if (!o.out_json.empty()) {
    nlohmann::json j;
    j["schema"] = "sptmbqc.report.closure";
    j["version"] = 1;
    j["config_hash"] = hash;
    j["mode"] = "group";
    j["reachability"] = nlohmann::json::parse(reachability_to_json(rep));
    write_file(o.out_json, j.dump(2));
  }
  return 0;
}

// ----------------------------------------------------------------- scan --

struct ScanOpts {
  std::string tensor;
  int i = 0;
  int j = 1;
  double theta = 0.0;
  std::string n_list;
  std::string m_list = "0";
  std::string out = "scan.csv";
};

int cmd_scan(const ScanOpts& o, std::ostream& out) {
  const std::string text = read_file(o.tensor);
  const std::string config = "scan|tensor_hash=" + hex64(fnv1a(text)) +
                             "|i=" + std::to_string(o.i) +
                             "|j=" + std::to_string(o.j) +
                             "|theta=" + num(o.theta) + "|n=" + o.n_list +
                             "|m=" + o.m_list;
  const std::string hash = hex64(fnv1a(config));

  const std::vector<long long> n_list = parse_ll_list(o.n_list);
  const std::vector<long long> m_list = parse_ll_list(o.m_list);
  for (long long n : n_list)
    if (n < 1) throw ValidationError("step counts must be >= 1");
  for (long long m : m_list)
    if (m < 0) throw ValidationError("pump lengths must be >= 0");

  const MPSTensor t = tensor_from_json(text);
  const std::vector<ScanRow> rows = error_scan(t, o.i, o.j, o.theta, n_list, m_list);

  std::string csv = scan_csv(rows);
  std::string footer;

  // per-m slope of ln(error) against ln(N)
  for (long long m : m_list) {
    std::vector<double> lx, ly;
    for (const ScanRow& r : rows)
      if (r.m == m && r.error > 0) {
        lx.push_back(std::log(static_cast<double>(r.n)));
        ly.push_back(std::log(r.error));
      }
    if (lx.size() >= 2)
      footer += "# slope[m=" + std::to_string(m) + "] = " +
                num(ls_slope(lx, ly)) + "\n";
  }
  // per-N decay rate of ln(error) against m
  for (long long n : n_list) {
    std::vector<double> lx, ly;
    for (const ScanRow& r : rows)
      if (r.n == n && r.error > 0) {
        lx.push_back(static_cast<double>(r.m));
        ly.push_back(std::log(r.error));
      }
    if (lx.size() >= 2)
      footer += "# pump_rate[N=" + std::to_string(n) + "] = " +
                num(ls_slope(lx, ly)) + "\n";
  }
  if (t.junk_dim > 1) {
    const FixedPointData fp = fixed_point_data(*transfer_channels(t).junk);
    footer += "# ln_lambda1 = " + num(std::log(fp.lambda1)) + "\n";
  }
  footer += "# config_hash = " + hash + "\n";

  write_file(o.out, csv + footer);
  out << csv << footer;
  out << "wrote " << o.out << "\n";
  return 0;
}

}  // namespace

std::string cocycle_to_json(const Cocycle& omega) {
  nlohmann::json j;
  j["schema"] = "sptmbqc.cocycle";
  j["version"] = 1;
  j["orders"] = omega.group.orders;
  nlohmann::json num_arr = nlohmann::json::array();
  nlohmann::json den_arr = nlohmann::json::array();
  for (const RationalPhase& ph : omega.table) {
    num_arr.push_back(ph.num);
    den_arr.push_back(ph.den);
  }
  j["num"] = std::move(num_arr);
  j["den"] = std::move(den_arr);
  return j.dump(2);
}

Cocycle cocycle_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cocycle file is not valid JSON: ") +
                          e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "sptmbqc.cocycle")
      throw ValidationError("not a cocycle file");
    if (j.at("version").get<long long>() > 1)
      throw ValidationError("cocycle file version is newer than supported");
    Cocycle omega;
    omega.group = FiniteAbelianGroup{j.at("orders").get<std::vector<long long>>()};
    const auto nums = j.at("num").get<std::vector<long long>>();
    const auto dens = j.at("den").get<std::vector<long long>>();
    const size_t want = static_cast<size_t>(omega.group.size()) *
                        static_cast<size_t>(omega.group.size());
    if (nums.size() != want || dens.size() != want)
      throw ValidationError("cocycle table has wrong size");
    omega.table.reserve(want);
    for (size_t k = 0; k < want; ++k)
      omega.table.push_back(RationalPhase::of(nums[k], dens[k]));
    if (!omega.is_normalized())
      throw ValidationError("cocycle table is not normalized");
    if (!omega.satisfies_cocycle_condition())
      throw ValidationError("table violates the cocycle condition");
    return omega;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed cocycle file: ") + e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "spt-mbqc: cohomology-built resource states, virtual-space gate "
      "simulation and executable Lie groups"};
  app.set_config("--config", "", "key=value config file")
      ->envname("SPTMBQC_CONFIG");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  BuildOpts b;
  CLI::App* build = app.add_subcommand("build", "construct a resource tensor");
  build->configurable(true);
  build->add_option("--preset", b.preset, "aklt or weyl-D");
  build->add_option("--group", b.group, "factor orders, e.g. 2,2")
      ->capture_default_str()
      ->join(',');
  build->add_option("--cocycle", b.cocycle, "weyl | trivial | table path")
      ->capture_default_str();
  build->add_option("--chars", b.chars, "all | nontrivial | a,b;c,d;...")
      ->capture_default_str()
      ->join(',');
  build->add_option("--kappa", b.kappa, "junk dimension")->capture_default_str();
  build->add_option("--seed", b.seed, "junk sampling seed")->capture_default_str();
  build->add_option("--out", b.out, "tensor output path")->capture_default_str();
  build->add_option("--report", b.report, "JSON report path");

  CalibrateOpts c;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "measure the nu matrix of a tensor");
  calibrate->configurable(true);
  calibrate->add_option("--tensor", c.tensor, "tensor JSON path")->required();
  calibrate->add_option("--phi", c.phi, "generator phase for the operational check")
      ->capture_default_str();
  calibrate->add_option("--out-csv", c.out_csv, "CSV path")->capture_default_str();
  calibrate->add_option("--out-json", c.out_json, "JSON path")->capture_default_str();

  GateOpts ga;
  CLI::App* gate =
      app.add_subcommand("gate", "compile and execute one logical rotation");
  gate->configurable(true);
  gate->add_option("--tensor", ga.tensor, "tensor JSON path")->required();
  gate->add_option("--i", ga.i, "first operator index")->capture_default_str();
  gate->add_option("--j", ga.j, "second operator index")->capture_default_str();
  gate->add_option("--phi", ga.phi, "generator phase")->capture_default_str();
  gate->add_option("--theta", ga.theta, "rotation angle")->required();
  gate->add_option("--eps", ga.eps, "target error budget")->capture_default_str();
  gate->add_option("--report", ga.report, "JSON report path");

  ClosureOpts cl;
  CLI::App* closure =
      app.add_subcommand("closure", "executable Lie algebra of a symmetry");
  closure->configurable(true);
  closure->add_option("--group", cl.group, "factor orders")->required()->join(',');
  closure->add_option("--cocycle", cl.cocycle, "weyl | trivial | table path")
      ->capture_default_str();
  closure->add_option("--chars", cl.chars, "present characters")
      ->capture_default_str()
      ->join(',');
  closure->add_option("--block", cl.block, "sites per blocked step")
      ->capture_default_str();
  closure->add_option("--triple", cl.triple,
                      "run the canonical triple with this r instead");
  closure->add_option("--strategy", cl.strategy, "saturate | staged")
      ->capture_default_str();
  closure->add_option("--tol", cl.tol, "closure tolerance")->capture_default_str();
  closure->add_option("--out", cl.out_json, "JSON report path");

  ScanOpts sc;
  CLI::App* scan =
      app.add_subcommand("scan", "error scaling over step and pump counts");
  scan->configurable(true);
  scan->add_option("--tensor", sc.tensor, "tensor JSON path")->required();
  scan->add_option("--i", sc.i, "first operator index")->capture_default_str();
  scan->add_option("--j", sc.j, "second operator index")->capture_default_str();
  scan->add_option("--theta", sc.theta, "rotation angle")->required();
  scan->add_option("--n-list", sc.n_list, "comma list of step counts")->required()->join(',');
  scan->add_option("--m-list", sc.m_list, "comma list of pump lengths")
      ->capture_default_str()
      ->join(',');
  scan->add_option("--out", sc.out, "CSV output path")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sptmbqc");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(b, out);
    if (*calibrate) return cmd_calibrate(c, out);
    if (*gate) return cmd_gate(ga, out);
    if (*closure) return cmd_closure(cl, out);
    if (*scan) return cmd_scan(sc, out);
    err << "no command given\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace sptmbqc
