#include "sptmbqc/mps.hpp"

namespace sptmbqc {

namespace {

Mat inverse_sqrt_psd(const Mat& s, double floor) {
  const Mat s0 = 0.5 * (s + Mat(s.adjoint()));
  Eigen::SelfAdjointEigenSolver<Mat> es(s0);
  Mat d = Mat::Zero(s.rows(), s.cols());
  for (int k = 0; k < s.rows(); ++k) {
    const double ev = es.eigenvalues()(k);
    if (ev <= floor)
      throw NotNormalizableError("junk normalization sum is singular");
    d(k, k) = 1.0 / std::sqrt(ev);
  }
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

}  // namespace

void validate_tensor(const MPSTensor& t, double tol) {
  const long long dk = t.logical_dim * t.junk_dim;
  if (t.phys_dim < 1 || t.logical_dim < 1 || t.junk_dim < 1)
    throw ValidationError("tensor dimensions must be positive");
  if (static_cast<long long>(t.matrices.size()) != t.phys_dim)
    throw ValidationError("tensor has wrong number of physical matrices");
  Mat sum = Mat::Zero(dk, dk);
  for (const Mat& a : t.matrices) {
    if (a.rows() != dk || a.cols() != dk)
      throw ValidationError("tensor matrix has wrong virtual dimension");
    sum += a.adjoint() * a;
  }
  if ((sum - Mat::Identity(dk, dk)).norm() > tol)
    throw ValidationError("tensor is not right-canonical");
  if (t.factorization) {
    const auto& f = *t.factorization;
    if (f.logical.size() != t.matrices.size() || f.junk.size() != t.matrices.size())
      throw ValidationError("factorization size mismatch");
    for (size_t i = 0; i < t.matrices.size(); ++i) {
      if (!is_unitary(f.logical[i], 1e-10))
        throw ValidationError("logical factor is not unitary");
      if ((t.matrices[i] - kron(f.logical[i], f.junk[i])).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("matrices do not factor as C (x) B");
    }
  }
  if (!t.wire_basis_labels.empty() &&
      static_cast<long long>(t.wire_basis_labels.size()) != t.phys_dim)
    throw ValidationError("wire basis label count mismatch");
}

MPSTensor aklt_tensor() {
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cx(0, -1), cx(0, 1), 0;
  sz << 1, 0, 0, -1;

  MPSTensor t;
  t.phys_dim = 3;
  t.logical_dim = 2;
  t.junk_dim = 1;
  const double w = 1.0 / std::sqrt(3.0);
  MPSTensor::Factorization f;
  f.logical = {sx, sy, sz};
  f.junk = {Mat::Constant(1, 1, w), Mat::Constant(1, 1, w), Mat::Constant(1, 1, w)};
  for (size_t i = 0; i < 3; ++i) t.matrices.push_back(kron(f.logical[i], f.junk[i]));
  t.factorization = std::move(f);
  // characters of Z_2 x Z_2 fixed by V(h)^dag sigma^i V(h) = chi_i(h) sigma^i
  t.wire_basis_labels = {Character{{1, 0}}, Character{{1, 1}}, Character{{0, 1}}};
  t.symmetry_group = FiniteAbelianGroup{{2, 2}};
  validate_tensor(t);
  return t;
}

MPSTensor spt_tensor(const LogicalOps& ops, const std::vector<Mat>& junk) {
  if (ops.ops.empty()) throw ValidationError("no logical operators");
  if (junk.size() != ops.ops.size())
    throw ValidationError("junk family size must match the number of characters");
  const long long kappa = junk[0].rows();
  if (kappa < 1) throw ValidationError("junk dimension must be positive");
  Mat s = Mat::Zero(kappa, kappa);
  for (const Mat& b : junk) {
    if (b.rows() != kappa || b.cols() != kappa)
      throw ValidationError("junk matrices must share a square dimension");
    s += b.adjoint() * b;
  }
  const Mat t_half = inverse_sqrt_psd(s, 1e-12);

  MPSTensor t;
  t.phys_dim = static_cast<long long>(ops.ops.size());
  t.logical_dim = ops.dim;
  t.junk_dim = kappa;
  MPSTensor::Factorization f;
  for (size_t i = 0; i < junk.size(); ++i) {
    f.logical.push_back(ops.ops[i].matrix);
    f.junk.push_back(junk[i] * t_half);
    t.matrices.push_back(kron(f.logical.back(), f.junk.back()));
    t.wire_basis_labels.push_back(ops.ops[i].chi);
  }
  t.factorization = std::move(f);
  t.symmetry_group = ops.group;
  validate_tensor(t);
  return t;
}

TransferChannels transfer_channels(const MPSTensor& t) {
  TransferChannels out;
  out.full = Channel{t.matrices};
  if (t.factorization) out.junk = Channel{t.factorization->junk};
  return out;
}

FixedPointData fixed_point_data(const Channel& junk_channel) {
  FixedPointData fp;
  const int k = junk_channel.dim();
  if (k < 1) throw ValidationError("empty channel");
  if (k == 1) {
    fp.rho_fix = Mat::Identity(1, 1);
    fp.lambda_tilde = Mat::Identity(1, 1);
    fp.lambda1 = 0.0;
    fp.xi_tilde = 0.0;
    return fp;
  }

  const ChannelSpectrum spec = channel_spectrum(junk_channel);
  if (std::abs(spec.value(0)) - std::abs(spec.value(1)) < 1e-9)
    throw NotPrimitiveError("junk channel dominant eigenvalue is degenerate");
  if (std::abs(spec.value(0) - cx(1, 0)) > 1e-9)
    throw NotPrimitiveError("junk channel dominant eigenvalue is not 1");

  // eigenmatrices carry an arbitrary global phase; rotate it out first
  const auto fix_phase = [](Mat m) {
    const cx tr = m.trace();
    if (std::abs(tr) < 1e-12)
      throw NotPrimitiveError("traceless dominant eigenmatrix");
    return Mat(m * (std::conj(tr) / std::abs(tr)));
  };
  fp.rho_fix = project_to_density(fix_phase(spec.pairs[0].matrix));

  const ChannelSpectrum adj = channel_spectrum(junk_channel.adjoint());
  Mat lam = fix_phase(adj.pairs[0].matrix);
  lam = 0.5 * (lam + Mat(lam.adjoint()));
  const cx scale = (lam * fp.rho_fix).trace();
  if (std::abs(scale) < 1e-12)
    throw NotPrimitiveError("adjoint fixed point is orthogonal to rho_fix");
  lam /= scale;
  fp.lambda_tilde = 0.5 * (lam + Mat(lam.adjoint()));

  fp.lambda1 = std::abs(spec.value(1));
  fp.xi_tilde = fp.lambda1 > 0 ? -1.0 / std::log(fp.lambda1) : 0.0;

  // spectral projection sanity: E^m(X) -> Tr(lambda X) rho_fix at rate lambda1
  Rng rng(0x5eedull);
  const int m = static_cast<int>(std::ceil(std::max(10.0, 6.0 * fp.xi_tilde)));
  for (int trial = 0; trial < 5; ++trial) {
    Mat raw = random_gaussian(k, k, rng);
    Mat x = 0.5 * (raw + Mat(raw.adjoint()));
    const Mat limit = (fp.lambda_tilde * x).trace() * fp.rho_fix;
    const double err0 = (x - limit).norm();
    const double errm = (junk_channel.apply_n(x, m) - limit).norm();
    const double bound =
        std::max(50.0 * err0 * std::pow(fp.lambda1, m), 1e-9);
    if (errm > bound)
      throw NumericalError("junk channel does not project at the spectral rate");
  }
  return fp;
}

Mat nu_from_fixed_point(const std::vector<Mat>& junk, const FixedPointData& fp) {
  const int d = static_cast<int>(junk.size());
  Mat nu(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      nu(i, j) = (fp.lambda_tilde * junk[static_cast<size_t>(i)] * fp.rho_fix *
                  junk[static_cast<size_t>(j)].adjoint())
                     .trace();
  return nu;
}

bool kraus_span_primitive(const std::vector<Mat>& kraus) {
  const long long kappa = kraus[0].rows();
  const long long target = kappa * kappa;
  const long long len = 4 * target;

  // orthonormal basis of the span of length-m products, grown iteratively
  std::vector<Mat> basis;
  auto absorb = [&](const Mat& m) {
    Mat r = m;
    for (const Mat& b : basis) r -= hs_inner(b, r) * b;
    for (const Mat& b : basis) r -= hs_inner(b, r) * b;
    const double n = r.norm();
    if (n > 1e-10) basis.push_back(r / n);
  };
  for (const Mat& k : kraus) absorb(k);
  for (long long step = 1; step < len; ++step) {
    std::vector<Mat> prev;
    prev.swap(basis);
    for (const Mat& k : kraus)
      for (const Mat& b : prev) absorb(k * b);
  }
  return static_cast<long long>(basis.size()) == target;
}

std::vector<Mat> random_primitive_junk(long long d, long long kappa,
                                       std::uint64_t seed) {
  if (kappa < 1 || d < 1) throw ValidationError("dimensions must be positive");
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng(split_seed(seed, attempt));
    std::vector<Mat> raw;
    raw.reserve(static_cast<size_t>(d));
    for (long long i = 0; i < d; ++i)
      raw.push_back(random_gaussian(static_cast<int>(kappa),
                                    static_cast<int>(kappa), rng));
    Mat s = Mat::Zero(kappa, kappa);
    for (const Mat& b : raw) s += b.adjoint() * b;

    std::vector<Mat> junk;
    try {
      const Mat t_half = inverse_sqrt_psd(s, 1e-9);
      for (const Mat& b : raw) junk.push_back(b * t_half);
    } catch (const NotNormalizableError&) {
      continue;
    }

    try {
      if (!kraus_span_primitive(junk)) continue;
      const FixedPointData fp = fixed_point_data(Channel{junk});
      Eigen::SelfAdjointEigenSolver<Mat> es(fp.rho_fix);
      if (kappa > 1 && es.eigenvalues().minCoeff() < 1e-8) continue;
      const Mat nu = nu_from_fixed_point(junk, fp);
      if (nu.cwiseAbs().minCoeff() <= 1e-6) continue;
    } catch (const NumericalError&) {
      continue;
    }
    return junk;
  }
  throw RetriesExhaustedError(
      "no primitive junk family with live calibration found for seed " +
      std::to_string(seed));
}

double symmetry_check(const MPSTensor& t, const FiniteAbelianGroup& h,
                      const ProjectiveIrrep& irrep) {
  if (t.wire_basis_labels.empty())
    throw ValidationError("tensor has no wire basis labels");
  if (irrep.dim != t.logical_dim)
    throw ValidationError("irrep dimension does not match the logical space");
  const Mat id_junk = Mat::Identity(t.junk_dim, t.junk_dim);
  double worst = 0.0;
  for (const auto& g : h.elements()) {
    const Mat v = kron(irrep.matrix(g), id_junk);
    for (size_t i = 0; i < t.matrices.size(); ++i) {
      const cx chi = t.wire_basis_labels[i].eval(h, g);
      const double viol = (chi * t.matrices[i] - v.adjoint() * t.matrices[i] * v).norm();
      worst = std::max(worst, viol);
    }
  }
  return worst;
}

MPSTensor block_sites(const MPSTensor& t, long long b) {
  if (b < 1) throw ValidationError("block length must be at least 1");
  double dims = std::pow(static_cast<double>(t.phys_dim), static_cast<double>(b));
  if (dims > 1024.0) throw DimensionTooLargeError("blocked physical dimension > 1024");
  if (b == 1) return t;

  const MPSTensor half = block_sites(t, b - 1);
  MPSTensor out;
  out.phys_dim = half.phys_dim * t.phys_dim;
  out.logical_dim = t.logical_dim;
  out.junk_dim = t.junk_dim;
  out.symmetry_group = t.symmetry_group;
  const bool fact = t.factorization.has_value();
  MPSTensor::Factorization f;
  // lexicographic composite index (i_1 ... i_b): i_1 most significant;
  // one more site appends i_b, and its matrix multiplies from the left
  for (long long head = 0; head < half.phys_dim; ++head) {
    for (long long ib = 0; ib < t.phys_dim; ++ib) {
      out.matrices.push_back(t.matrices[static_cast<size_t>(ib)] *
                             half.matrices[static_cast<size_t>(head)]);
      if (fact) {
        f.logical.push_back(t.factorization->logical[static_cast<size_t>(ib)] *
                            half.factorization->logical[static_cast<size_t>(head)]);
        f.junk.push_back(t.factorization->junk[static_cast<size_t>(ib)] *
                         half.factorization->junk[static_cast<size_t>(head)]);
      }
      if (!t.wire_basis_labels.empty())
        out.wire_basis_labels.push_back(
            half.wire_basis_labels[static_cast<size_t>(head)].times(
                t.symmetry_group, t.wire_basis_labels[static_cast<size_t>(ib)]));
    }
  }
  if (fact) out.factorization = std::move(f);
  validate_tensor(out);
  return out;
}

}  // namespace sptmbqc
