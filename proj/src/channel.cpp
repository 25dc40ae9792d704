#include "sptmbqc/channel.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sptmbqc {

Mat Channel::apply(const Mat& x) const {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const Mat& k : kraus) out += k * x * k.adjoint();
  return out;
}

Mat Channel::apply_n(const Mat& x, int n) const {
  Mat out = x;
  for (int i = 0; i < n; ++i) out = apply(out);
  return out;
}

Channel Channel::adjoint() const {
  Channel adj;
  adj.kraus.reserve(kraus.size());
  for (const Mat& k : kraus) adj.kraus.push_back(k.adjoint());
  return adj;
}

Mat Channel::completeness() const {
  const int d = dim();
  Mat s = Mat::Zero(d, d);
  for (const Mat& k : kraus) s += k.adjoint() * k;
  return s;
}

bool Channel::is_trace_preserving(double tol) const {
  const int d = dim();
  return (completeness() - Mat::Identity(d, d)).norm() <= tol;
}

Mat Channel::superoperator() const {
  // vec(K X K^dag) = (conj(K) (x) K) vec(X)
  const int d = dim();
  Mat s = Mat::Zero(d * d, d * d);
  for (const Mat& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

ChannelSpectrum channel_spectrum(const Channel& ch, double cluster_tol) {
  const int d = ch.dim();
  if (d == 0) throw ValidationError("channel_spectrum: empty channel");
  if (d > 64)
    throw DimensionTooLargeError(
        "channel_spectrum: dense superoperator diagonalization capped at dim 64");

  Mat s = ch.superoperator();
  Eigen::ComplexEigenSolver<Mat> es(s);
  if (es.info() != Eigen::Success)
    throw NumericalError("channel_spectrum: eigensolver failed");

  std::vector<int> order(static_cast<size_t>(d * d));
  for (int i = 0; i < d * d; ++i) order[static_cast<size_t>(i)] = i;
  const Vec& vals = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double ma = std::abs(vals(a)), mb = std::abs(vals(b));
    if (std::abs(ma - mb) > 1e-14) return ma > mb;
    if (std::abs(vals(a).real() - vals(b).real()) > 1e-14)
      return vals(a).real() > vals(b).real();
    return vals(a).imag() > vals(b).imag();
  });

  // Defective dominant eigenvalue: cluster everything within cluster_tol of
  // the top eigenvalue and compare numerical rank of the eigenvector block
  // against the cluster size.
  const cx top = vals(order[0]);
  int cluster = 0;
  for (int i = 0; i < d * d; ++i)
    if (std::abs(vals(order[static_cast<size_t>(i)]) - top) <= cluster_tol) ++cluster;
  if (cluster > 1) {
    Mat block(d * d, cluster);
    int c = 0;
    for (int i = 0; i < d * d; ++i) {
      int idx = order[static_cast<size_t>(i)];
      if (std::abs(vals(idx) - top) <= cluster_tol)
        block.col(c++) = es.eigenvectors().col(idx);
    }
    Eigen::JacobiSVD<Mat> svd(block);
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > 1e-8) ++rank;
    if (rank < cluster)
      throw NonDiagonalizableError(
          "channel_spectrum: dominant eigenvalue is defective (suspected "
          "Jordan block of size " +
          std::to_string(cluster - rank + 1) + ")");
  }

  ChannelSpectrum spec;
  spec.pairs.reserve(static_cast<size_t>(d * d));
  for (int i = 0; i < d * d; ++i) {
    int idx = order[static_cast<size_t>(i)];
    Mat m = unvec(es.eigenvectors().col(idx), d, d);
    double nrm = m.norm();
    if (nrm > 0) m /= nrm;
    spec.pairs.push_back({vals(idx), m});
  }
  return spec;
}

Mat power_iteration_fixed_point(const Channel& ch, int max_iters, double thresh) {
  const int d = ch.dim();
  if (max_iters <= 0) max_iters = 10 * d * d;
  Mat x = Mat::Identity(d, d) / static_cast<double>(d);
  for (int it = 0; it < max_iters; ++it) {
    Mat y = ch.apply(x);
    double nrm = y.norm();
    if (nrm == 0) throw NumericalError("power_iteration_fixed_point: map annihilated iterate");
    y /= nrm;
    if ((y - x).norm() < thresh) return y;
    x = y;
  }
  throw NumericalError("power_iteration_fixed_point: no convergence");
}

}  // namespace sptmbqc
