#include "sptmbqc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace sptmbqc {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  const Mat diff0 = rho - sigma;
  const Mat diff = 0.5 * (diff0 + diff0.adjoint());  // hermitian up to roundoff
  Eigen::SelfAdjointEigenSolver<Mat> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

bool is_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() <= tol;
}

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol;
}

Mat expm_antihermitian(const Mat& g) {
  if ((g + g.adjoint()).norm() > 1e-9 * (1.0 + g.norm()))
    throw ValidationError("expm_antihermitian: generator is not antihermitian");
  // g = i h with h hermitian; exp(g) = U exp(i diag) U^dag.
  const Mat h0 = cx(0, -1) * g;
  const Mat h = 0.5 * (h0 + h0.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(cx(0, es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Vec vec(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec(const Vec& v, int rows, int cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat partial_trace_second(const Mat& rho, int dim_l, int dim_j) {
  Mat out = Mat::Zero(dim_l, dim_l);
  for (int a = 0; a < dim_l; ++a)
    for (int b = 0; b < dim_l; ++b)
      for (int k = 0; k < dim_j; ++k)
        out(a, b) += rho(a * dim_j + k, b * dim_j + k);
  return out;
}

Mat partial_trace_first(const Mat& rho, int dim_l, int dim_j) {
  Mat out = Mat::Zero(dim_j, dim_j);
  for (int k = 0; k < dim_j; ++k)
    for (int l = 0; l < dim_j; ++l)
      for (int a = 0; a < dim_l; ++a)
        out(k, l) += rho(a * dim_j + k, a * dim_j + l);
  return out;
}

Mat random_gaussian(int rows, int cols, Rng& rng) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian_cx();
  return m;
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase gauge so the distribution is Haar
  for (int k = 0; k < dim; ++k) {
    cx d = r(k, k);
    q.col(k) *= (std::abs(d) > 0) ? d / std::abs(d) : cx(1, 0);
  }
  return q;
}

Mat random_density(int dim, Rng& rng) {
  Mat g = random_gaussian(dim, dim, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Mat project_to_density(const Mat& rho, double floor) {
  Mat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < floor)
      throw NumericalError("project_to_density: eigenvalue below floor: " +
                           std::to_string(ev(k)));
    if (ev(k) < 0) ev(k) = 0;
  }
  Mat out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return out / out.trace().real();
}

}  // namespace sptmbqc
