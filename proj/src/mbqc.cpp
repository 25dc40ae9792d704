#include "sptmbqc/mbqc.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sptmbqc {

namespace {

void require_factorized(const MPSTensor& t, const char* who) {
  if (!t.factorization)
    throw ValidationError(std::string(who) + ": tensor has no factorization");
}

void check_pair(const MPSTensor& t, int i, int j) {
  const int d = static_cast<int>(t.phys_dim);
  if (i < 0 || j < 0 || i >= d || j >= d)
    throw ValidationError("basis index out of range");
  if (i == j) throw ValidationError("tilt indices must differ");
}

// basis with columns i, j replaced by c|i> + s_phase|j> and c|j> - conj(s_phase)|i>
MeasurementBasis two_vector_basis(const MPSTensor& t, int i, int j, double c,
                                  cx s_phase) {
  const int d = static_cast<int>(t.phys_dim);
  MeasurementBasis b;
  b.vectors = Mat::Identity(d, d);
  b.vectors.col(i) = Vec::Zero(d);
  b.vectors.col(j) = Vec::Zero(d);
  b.vectors(i, i) = c;
  b.vectors(j, i) = s_phase;
  b.vectors(j, j) = c;
  b.vectors(i, j) = -std::conj(s_phase);
  b.byproduct_assignment.resize(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) b.byproduct_assignment[static_cast<size_t>(k)] = k;
  b.is_wire = false;
  return b;
}

// A[v] = sum_i <v|i> A^i for column `col` of the basis
Mat outcome_kraus(const MPSTensor& t, const Mat& vectors, int col) {
  const long long n = t.logical_dim * t.junk_dim;
  Mat a = Mat::Zero(n, n);
  for (long long i = 0; i < t.phys_dim; ++i)
    a += std::conj(vectors(i, col)) * t.matrices[static_cast<size_t>(i)];
  return a;
}

Mat kron_with_junk_identity(const Mat& c, long long junk_dim) {
  return kron(c, Mat::Identity(junk_dim, junk_dim));
}

// apply I (x) E~ blockwise on all logical blocks
Mat junk_channel_on_blocks(const Mat& rho, const std::vector<Mat>& junk,
                           long long d_log, long long d_junk) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (long long a = 0; a < d_log; ++a)
    for (long long b = 0; b < d_log; ++b) {
      const Mat blk = rho.block(a * d_junk, b * d_junk, d_junk, d_junk);
      Mat acc = Mat::Zero(d_junk, d_junk);
      for (const auto& k : junk) acc += k * blk * k.adjoint();
      out.block(a * d_junk, b * d_junk, d_junk, d_junk) = acc;
    }
  return out;
}

// hermitian generator h = i(e^{i phi} W - e^{-i phi} W^dag)/2
Mat rotation_generator(const Mat& w, double phi) {
  const cx ph = std::exp(cx(0.0, phi));
  return cx(0.0, 0.5) * Mat(ph * w - std::conj(ph) * w.adjoint());
}

Mat pair_op(const MPSTensor& t, int i, int j) {
  const auto& c = t.factorization->logical;
  return c[static_cast<size_t>(i)].adjoint() * c[static_cast<size_t>(j)];
}

// probe state sensitive to rotations generated by h: equal superposition of
// the extreme eigenvectors
Mat probe_state(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const long long n = h.rows();
  Vec psi = es.eigenvectors().col(0) + es.eigenvectors().col(n - 1);
  psi /= psi.norm();
  return psi * psi.adjoint();
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
  for (int b = 0; b < 8; ++b) {
    hash ^= (value >> (8 * b)) & 0xffULL;
    hash *= 1099511628211ULL;
  }
  return hash;
}

int sample_index(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

void validate_basis(const MeasurementBasis& b, double tol) {
  const int d = b.dim();
  if (d == 0 || b.vectors.rows() != d)
    throw ValidationError("basis must be square and nonempty");
  const Mat gram = b.vectors.adjoint() * b.vectors;
  if ((gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("basis is not orthonormal");
  if (b.byproduct_assignment.size() != static_cast<size_t>(d))
    throw ValidationError("byproduct assignment must cover every outcome");
  for (const int lbl : b.byproduct_assignment)
    if (lbl < 0 || lbl >= d)
      throw ValidationError("byproduct assignment out of range");
}

MeasurementBasis wire_basis(const MPSTensor& t) {
  const int d = static_cast<int>(t.phys_dim);
  MeasurementBasis b;
  b.vectors = Mat::Identity(d, d);
  b.byproduct_assignment.resize(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) b.byproduct_assignment[static_cast<size_t>(k)] = k;
  b.is_wire = true;
  return b;
}

MeasurementBasis tilted_basis(const MPSTensor& t, int i, int j, double dtheta,
                              double phi) {
  check_pair(t, i, j);
  if (std::abs(dtheta) > 0.3)
    throw ValidationError("tilt amplitude outside the perturbative regime");
  if (dtheta == 0.0) {
    MeasurementBasis b = wire_basis(t);
    return b;
  }
  const double c = 1.0 / std::hypot(1.0, dtheta);
  return two_vector_basis(t, i, j, c, dtheta * c * std::exp(cx(0.0, phi)));
}

MeasurementBasis rotated_basis(const MPSTensor& t, int i, int j, double beta,
                               double phi) {
  check_pair(t, i, j);
  return two_vector_basis(t, i, j, std::cos(beta / 2.0),
                          std::sin(beta / 2.0) * std::exp(cx(0.0, phi)));
}

std::vector<GroupElement> wire_frame_elements(const MPSTensor& t) {
  require_factorized(t, "wire_frame_elements");
  const auto& c = t.factorization->logical;
  const auto elements = t.symmetry_group.elements();
  const double dim = static_cast<double>(t.logical_dim);
  std::vector<GroupElement> out;
  for (size_t i = 0; i < c.size(); ++i) {
    // chi_j(h_i) from the conjugation action of C^i on every other label
    std::vector<cx> action(c.size());
    for (size_t j = 0; j < c.size(); ++j)
      action[j] =
          (c[i].adjoint() * c[j] * c[i] * c[j].adjoint()).trace() / dim;
    const GroupElement* found = nullptr;
    for (const auto& h : elements) {
      bool ok = true;
      for (size_t j = 0; ok && j < c.size(); ++j)
        ok = std::abs(t.wire_basis_labels[j].eval(t.symmetry_group, h) -
                      action[j]) < 1e-8;
      if (ok) {
        if (found)
          throw ValidationError(
              "wire labels do not determine byproduct group elements");
        found = &h;
      }
    }
    if (!found)
      throw ValidationError("no group element matches the byproduct action");
    out.push_back(*found);
  }
  return out;
}

MeasurementBasis adapt_basis(const MeasurementBasis& b, const MPSTensor& t,
                             const GroupElement& frame) {
  MeasurementBasis out = b;
  bool trivial = true;
  for (long long i = 0; i < t.phys_dim; ++i) {
    const cx u =
        t.wire_basis_labels[static_cast<size_t>(i)].eval(t.symmetry_group, frame);
    out.vectors.row(i) *= u;
    trivial = trivial &&
              t.wire_basis_labels[static_cast<size_t>(i)]
                  .eval_phase(t.symmetry_group, frame)
                  .is_one();
  }
  out.is_wire = b.is_wire && trivial;
  return out;
}

Mat MixedVirtualState::logical_reduced() const {
  return partial_trace_second(rho, static_cast<int>(logical_dim),
                              static_cast<int>(junk_dim));
}

Mat MixedVirtualState::junk_reduced() const {
  return partial_trace_first(rho, static_cast<int>(logical_dim),
                             static_cast<int>(junk_dim));
}

void validate_state(const MixedVirtualState& s, double tol) {
  const long long n = s.logical_dim * s.junk_dim;
  if (s.rho.rows() != n || s.rho.cols() != n)
    throw ValidationError("state dimension mismatch");
  if (std::abs(s.rho.trace() - cx(1.0, 0.0)) > tol)
    throw ValidationError("state trace differs from 1");
  const Mat herm = 0.5 * (s.rho + Mat(s.rho.adjoint()));
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  if (es.eigenvalues().minCoeff() < -tol)
    throw ValidationError("state has a negative eigenvalue");
}

MixedVirtualState product_state(const Mat& logical, const Mat& junk) {
  MixedVirtualState s;
  s.logical_dim = logical.rows();
  s.junk_dim = junk.rows();
  s.rho = kron(logical, junk);
  return s;
}

MixedVirtualState sum_over_outcomes_step(const MixedVirtualState& sigma,
                                         const MeasurementBasis& basis,
                                         const MPSTensor& t,
                                         double* pre_trace) {
  require_factorized(t, "sum_over_outcomes_step");
  if (basis.dim() != t.phys_dim)
    throw ValidationError("basis dimension does not match the tensor");
  const long long kappa = t.junk_dim;
  Mat out = Mat::Zero(sigma.rho.rows(), sigma.rho.cols());
  for (int s = 0; s < basis.dim(); ++s) {
    const int lbl = basis.byproduct_assignment[static_cast<size_t>(s)];
    const Mat corr = kron_with_junk_identity(
        t.factorization->logical[static_cast<size_t>(lbl)].adjoint(), kappa);
    const Mat gamma = corr * outcome_kraus(t, basis.vectors, s);
    out += gamma * sigma.rho * gamma.adjoint();
  }
  const double tr = out.trace().real();
  if (pre_trace) *pre_trace = tr;
  if (tr <= 0.0) throw NumericalError("step annihilated the state");
  MixedVirtualState next = sigma;
  next.rho = out / tr;
  return next;
}

MixedVirtualState pump_fixed_point(const MixedVirtualState& sigma,
                                   const MPSTensor& t, long long m) {
  require_factorized(t, "pump_fixed_point");
  // scalar junk channel of a right-canonical tensor is the identity map
  if (t.junk_dim == 1 || m == 0) return sigma;
  MixedVirtualState out = sigma;
  for (long long step = 0; step < m; ++step)
    out.rho = junk_channel_on_blocks(out.rho, t.factorization->junk,
                                     t.logical_dim, t.junk_dim);
  const double tr = out.rho.trace().real();
  out.rho /= tr;
  return out;
}

double NuMatrix::modulus(int i, int j) const {
  return std::abs(nu(i, j));
}

double NuMatrix::phase(int i, int j) const {
  return std::arg(nu(i, j));
}

NuMatrix calibrate_nu(const MPSTensor& t) {
  require_factorized(t, "calibrate_nu");
  const auto channels = transfer_channels(t);
  const auto fp = fixed_point_data(*channels.junk);
  NuMatrix out;
  out.nu = nu_from_fixed_point(t.factorization->junk, fp);
  const int d = static_cast<int>(t.phys_dim);
  if ((out.nu - Mat(out.nu.adjoint())).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("calibration matrix is not hermitian");
  out.nu_scalar = 0.0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(out.nu(i, i).imag()) > 1e-10 || out.nu(i, i).real() < -1e-10)
      throw NumericalError("calibration diagonal is not real nonnegative");
    out.nu_scalar += out.nu(i, i).real();
  }
  if (out.nu_scalar <= 0.0)
    throw NumericalError("calibration scalar must be positive");
  return out;
}

std::string calibration_csv(const NuMatrix& nu) {
  std::ostringstream os;
  os << "i,j,re,im,abs,phase,dead\n";
  char buf[160];
  const int d = static_cast<int>(nu.nu.rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%d\n", i,
                    j, nu.nu(i, j).real(), nu.nu(i, j).imag(),
                    nu.modulus(i, j), nu.phase(i, j),
                    nu.is_dead(i, j) ? 1 : 0);
      os << buf;
    }
  return os.str();
}

Mat predicted_gate(const MPSTensor& t, int i, int j, double dtheta, double phi,
                   const NuMatrix& nu) {
  require_factorized(t, "predicted_gate");
  check_pair(t, i, j);
  if (nu.is_dead(i, j))
    throw DeadDirectionError("calibration constant below the dead floor");
  const Mat w = pair_op(t, i, j);
  const cx ph = std::exp(cx(0.0, -(phi + nu.phase(i, j))));
  const double weight = dtheta * nu.modulus(i, j) / nu.nu_scalar;
  const Mat gen = weight * Mat(ph * w - std::conj(ph) * w.adjoint());
  return expm_antihermitian(gen);
}

Mat ideal_rotation(const MPSTensor& t, int i, int j, double phi_gen,
                   double theta) {
  require_factorized(t, "ideal_rotation");
  check_pair(t, i, j);
  const Mat h = rotation_generator(pair_op(t, i, j), phi_gen);
  return expm_antihermitian(Mat(cx(0.0, -theta / 2.0) * h));
}

ExecutionComparison execute_and_compare(const Mat& logical_in,
                                        const MPSTensor& t, int i, int j,
                                        double dtheta, double phi, long long m,
                                        const NuMatrix& nu) {
  require_factorized(t, "execute_and_compare");
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  MixedVirtualState s = product_state(logical_in, fp.rho_fix);
  s = sum_over_outcomes_step(s, tilted_basis(t, i, j, dtheta, phi), t);
  s = pump_fixed_point(s, t, m);
  const Mat gate = predicted_gate(t, i, j, dtheta, phi, nu);
  const Mat target =
      kron(Mat(gate * logical_in * gate.adjoint()), fp.rho_fix);
  ExecutionComparison cmp;
  cmp.out = s;
  cmp.residual = trace_distance(s.rho, target);
  cmp.dtheta = dtheta;
  cmp.pump_m = m;
  return cmp;
}

GateProgram compile_rotation(const MPSTensor& t, const NuMatrix& nu, int i,
                             int j, double phi_gen, double theta, double eps) {
  require_factorized(t, "compile_rotation");
  check_pair(t, i, j);
  if (theta < 0.0) throw ValidationError("rotation angle must be nonnegative");
  if (eps <= 0.0) throw ValidationError("error budget must be positive");
  if (nu.is_dead(i, j))
    throw DeadDirectionError("calibration constant below the dead floor");

  const double ratio = nu.nu_scalar / nu.modulus(i, j);
  const double n_real = std::max(
      {theta * theta / eps, theta / 0.05, theta * ratio / (2.0 * 0.05), 1.0});
  const long long n = static_cast<long long>(std::ceil(n_real));

  long long m = 0;
  if (t.junk_dim > 1) {
    const auto fp = fixed_point_data(*transfer_channels(t).junk);
    m = static_cast<long long>(std::ceil(
        std::max(2.0 * fp.xi_tilde * std::log(static_cast<double>(n)), 1.0)));
  }

  const double beta = (theta / static_cast<double>(n)) * ratio / 2.0;
  const double tilt = std::tan(beta / 2.0);
  const double phi_meas = -phi_gen - nu.phase(i, j);

  GateProgram p;
  p.i = i;
  p.j = j;
  p.phi_gen = phi_gen;
  p.theta = theta;
  p.n_steps = n;
  p.pump_m = m;
  p.predicted_cost = static_cast<double>(n) * static_cast<double>(m + 1);
  const MeasurementBasis basis = tilted_basis(t, i, j, tilt, phi_meas);
  p.steps.assign(static_cast<size_t>(n), GateStep{basis, m});
  return p;
}

MixedVirtualState run_program(const GateProgram& p, const Mat& logical_in,
                              const MPSTensor& t) {
  require_factorized(t, "run_program");
  if (std::abs(logical_in.trace() - cx(1.0, 0.0)) > 1e-9)
    throw ValidationError("logical input must have unit trace");
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  MixedVirtualState s = product_state(logical_in, fp.rho_fix);
  for (const auto& step : p.steps) {
    s = sum_over_outcomes_step(s, step.basis, t);
    s = pump_fixed_point(s, t, step.pump);
  }
  return s;
}

SampleResult sample_trajectories(const GateProgram& p, const Mat& logical_in,
                                 const MPSTensor& t, long long shots,
                                 std::uint64_t seed, bool keep_shots) {
  require_factorized(t, "sample_trajectories");
  if (shots < 1) throw ValidationError("need at least one shot");
  if (std::abs(logical_in.trace() - cx(1.0, 0.0)) > 1e-9)
    throw ValidationError("logical input must have unit trace");

  const long long d_log = t.logical_dim;
  const long long d_junk = t.junk_dim;
  const int d = static_cast<int>(t.phys_dim);
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  const auto frame_elems = wire_frame_elements(t);
  const auto& group = t.symmetry_group;
  const auto& cops = t.factorization->logical;
  const auto& bops = t.factorization->junk;

  bool wire_only = true;
  for (const auto& step : p.steps) wire_only = wire_only && step.basis.is_wire;

  SampleResult res;
  res.outcome_counts.assign(p.steps.size(),
                            std::vector<long long>(static_cast<size_t>(d), 0));
  std::uint64_t hash = 1469598103934665603ULL;
  Mat bar = Mat::Zero(d_log * d_junk, d_log * d_junk);

  for (long long shot = 0; shot < shots; ++shot) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(shot)));
    GroupElement frame = group.zero();

    if (wire_only) {
      // Byproducts of wire measurements are exact: the corrected Kraus is
      // I (x) B^k, so the logical factor is never multiplied at all. Only
      // the junk factor evolves; the frame is still recorded.
      Mat junk = fp.rho_fix;
      for (size_t si = 0; si < p.steps.size(); ++si) {
        const long long meas = 1 + p.steps[si].pump;
        for (long long rep = 0; rep < meas; ++rep) {
          std::vector<double> probs(static_cast<size_t>(d));
          for (int k = 0; k < d; ++k)
            probs[static_cast<size_t>(k)] =
                (bops[static_cast<size_t>(k)] * junk *
                 bops[static_cast<size_t>(k)].adjoint())
                    .trace()
                    .real();
          const int k = sample_index(probs, rng);
          junk = bops[static_cast<size_t>(k)] * junk *
                 bops[static_cast<size_t>(k)].adjoint() /
                 probs[static_cast<size_t>(k)];
          frame = group.add(frame, frame_elems[static_cast<size_t>(k)]);
          hash = fnv1a(hash, static_cast<std::uint64_t>(k));
          if (rep == 0) ++res.outcome_counts[si][static_cast<size_t>(k)];
        }
      }
      bar += kron(logical_in, junk);
      if (keep_shots) res.shot_logical_states.push_back(logical_in);
      continue;
    }

    // general path: raw physical Kraus, frame resolved by basis adaptation,
    // endpoint un-rotated by the accumulated byproduct
    Mat rho = kron(logical_in, fp.rho_fix);
    Mat frame_op = Mat::Identity(d_log, d_log);
    const MeasurementBasis wire = wire_basis(t);
    for (size_t si = 0; si < p.steps.size(); ++si) {
      const long long meas = 1 + p.steps[si].pump;
      for (long long rep = 0; rep < meas; ++rep) {
        const MeasurementBasis& intended = rep == 0 ? p.steps[si].basis : wire;
        const MeasurementBasis adapted = adapt_basis(intended, t, frame);
        std::vector<double> probs(static_cast<size_t>(d));
        std::vector<Mat> post(static_cast<size_t>(d));
        for (int k = 0; k < d; ++k) {
          const Mat kr = outcome_kraus(t, adapted.vectors, k);
          post[static_cast<size_t>(k)] = kr * rho * kr.adjoint();
          probs[static_cast<size_t>(k)] =
              post[static_cast<size_t>(k)].trace().real();
        }
        const int k = sample_index(probs, rng);
        rho = post[static_cast<size_t>(k)] / probs[static_cast<size_t>(k)];
        const int lbl = adapted.byproduct_assignment[static_cast<size_t>(k)];
        frame_op = frame_op * cops[static_cast<size_t>(lbl)];
        frame = group.add(frame, frame_elems[static_cast<size_t>(lbl)]);
        hash = fnv1a(hash, static_cast<std::uint64_t>(k));
        if (rep == 0) ++res.outcome_counts[si][static_cast<size_t>(k)];
      }
    }
    const Mat sig = kron_with_junk_identity(frame_op, d_junk);
    rho = Mat(sig.adjoint() * rho * sig);
    bar += rho;
    if (keep_shots)
      res.shot_logical_states.push_back(
          partial_trace_second(rho, static_cast<int>(d_log),
                               static_cast<int>(d_junk)));
  }

  res.rho_bar.logical_dim = d_log;
  res.rho_bar.junk_dim = d_junk;
  res.rho_bar.rho = bar / static_cast<double>(shots);
  res.outcome_log_hash = hash;
  return res;
}

double bootstrap_sd(const std::vector<double>& xs, int resamples,
                    std::uint64_t seed) {
  if (xs.empty() || resamples < 2)
    throw ValidationError("bootstrap needs data and at least two resamples");
  Rng rng(seed);
  const size_t n = xs.size();
  std::vector<double> means(static_cast<size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    double acc = 0.0;
    for (size_t k = 0; k < n; ++k)
      acc += xs[rng.below(static_cast<std::uint64_t>(n))];
    means[static_cast<size_t>(b)] = acc / static_cast<double>(n);
  }
  double mean = 0.0;
  for (const double m : means) mean += m;
  mean /= static_cast<double>(resamples);
  double var = 0.0;
  for (const double m : means) var += (m - mean) * (m - mean);
  return std::sqrt(var / static_cast<double>(resamples));
}

std::vector<double> readout_probabilities(const MixedVirtualState& sigma,
                                          const MeasurementBasis& basis,
                                          const MPSTensor& t, long long k) {
  require_factorized(t, "readout_probabilities");
  if (k < 0) throw ValidationError("pump length must be nonnegative");
  const auto fp = fixed_point_data(*transfer_channels(t).junk);
  const long long d_log = t.logical_dim;
  const long long d_junk = t.junk_dim;
  std::vector<double> out;
  for (int o = 0; o < basis.dim(); ++o) {
    const Mat kr = outcome_kraus(t, basis.vectors, o);
    Mat m = kr * sigma.rho * kr.adjoint();
    for (long long rep = 0; rep < k; ++rep)
      m = junk_channel_on_blocks(m, t.factorization->junk, d_log, d_junk);
    cx p = 0.0;
    for (long long a = 0; a < d_log; ++a)
      p += (fp.lambda_tilde *
            Mat(m.block(a * d_junk, a * d_junk, d_junk, d_junk)))
               .trace();
    out.push_back(p.real());
  }
  return out;
}

std::vector<ScanRow> error_scan(const MPSTensor& t, int i, int j, double theta,
                                const std::vector<long long>& n_list,
                                const std::vector<long long>& m_list) {
  require_factorized(t, "error_scan");
  const NuMatrix nu = calibrate_nu(t);
  if (nu.is_dead(i, j))
    throw DeadDirectionError("calibration constant below the dead floor");

  // pick the generator phase giving the larger rotation generator
  const Mat w = pair_op(t, i, j);
  double phi_gen = kPi;
  if (rotation_generator(w, kPi / 2.0).norm() >
      rotation_generator(w, kPi).norm())
    phi_gen = kPi / 2.0;

  const Mat h = rotation_generator(w, phi_gen);
  const Mat sigma0 = probe_state(h);
  const Mat ideal = ideal_rotation(t, i, j, phi_gen, theta);
  const Mat target = ideal * sigma0 * ideal.adjoint();

  const double ratio = nu.nu_scalar / nu.modulus(i, j);
  const double phi_meas = -phi_gen - nu.phase(i, j);

  std::vector<ScanRow> rows;
  for (const long long n : n_list)
    for (const long long m : m_list) {
      const double beta = (theta / static_cast<double>(n)) * ratio / 2.0;
      GateProgram p;
      p.i = i;
      p.j = j;
      p.phi_gen = phi_gen;
      p.theta = theta;
      p.n_steps = n;
      p.pump_m = m;
      p.predicted_cost = static_cast<double>(n) * static_cast<double>(m + 1);
      const MeasurementBasis basis =
          tilted_basis(t, i, j, std::tan(beta / 2.0), phi_meas);
      p.steps.assign(static_cast<size_t>(n), GateStep{basis, m});
      const MixedVirtualState out = run_program(p, sigma0, t);
      rows.push_back(
          {n, m, trace_distance(out.logical_reduced(), target)});
    }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "N,m,error\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g\n", r.n, r.m, r.error);
    os << buf;
  }
  return os.str();
}

double operational_nu_ratio(const MPSTensor& t, const NuMatrix& nu, int i,
                            int j, double phi_gen) {
  const double theta = kPi / 4.0;
  const GateProgram p = compile_rotation(t, nu, i, j, phi_gen, theta, 1e-3);
  const Mat h = rotation_generator(pair_op(t, i, j), phi_gen);
  const Mat sigma0 = probe_state(h);
  const Mat rho = run_program(p, sigma0, t).logical_reduced();

  const auto fidelity = [&](double alpha) {
    const Mat u = ideal_rotation(t, i, j, phi_gen, alpha);
    return (u.adjoint() * rho * u * sigma0).trace().real();
  };

  // golden-section maximization of the realized rotation angle
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.2 * theta, hi = 1.8 * theta;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = fidelity(x1), f2 = fidelity(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = fidelity(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = fidelity(x1);
    }
  }
  const double alpha = 0.5 * (lo + hi);

  // invert the per-step rescaling: each of the N steps realizes the logical
  // angle 4 tan(beta/2) |nu_ij|/nu
  const double beta =
      (theta / static_cast<double>(p.n_steps)) * nu.nu_scalar /
      nu.modulus(i, j) / 2.0;
  return alpha / (4.0 * static_cast<double>(p.n_steps) * std::tan(beta / 2.0));
}

}  // namespace sptmbqc
