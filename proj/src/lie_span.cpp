#include "sptmbqc/lie_span.hpp"

namespace sptmbqc {

namespace {

// Projects cand onto the orthogonal complement of basis; adds it when the
// residual is unambiguous. Returns true if the basis grew.
bool absorb(std::vector<Mat>& basis, Mat cand, double tol) {
  for (const Mat& b : basis) cand -= hs_inner_re(b, cand) * b;
  // second pass tames cancellation for candidates nearly in-span
  for (const Mat& b : basis) cand -= hs_inner_re(b, cand) * b;
  const double nrm = cand.norm();
  if (nrm <= tol) return false;
  if (nrm <= 10.0 * tol)
    throw ToleranceAmbiguityError(
        "real_span_closure: candidate norm " + std::to_string(nrm) +
        " inside ambiguity band (tol, 10*tol]; tighten tol");
  basis.push_back(cand / nrm);
  return true;
}

}  // namespace

LieSpan real_span_closure(const std::vector<Mat>& generators, double tol,
                          int max_dim) {
  if (generators.empty())
    throw ValidationError("real_span_closure: no generators");
  const Eigen::Index n = generators[0].rows();
  for (const Mat& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw ValidationError("real_span_closure: inconsistent dimensions");
    if ((g + g.adjoint()).norm() > 1e-9 * (1.0 + g.norm()))
      throw ValidationError("real_span_closure: generator not antihermitian");
  }

  std::vector<Mat> basis;
  for (const Mat& g : generators) absorb(basis, g, tol);

  // Pairs are consumed queue-style: (i, j) with i < j, in the order elements
  // entered the basis, so the result does not depend on map iteration order.
  size_t next = 0;
  while (next < basis.size()) {
    if (max_dim > 0 && static_cast<int>(basis.size()) >= max_dim) break;
    const size_t j = next++;
    for (size_t i = 0; i < j; ++i) {
      absorb(basis, comm(basis[i], basis[j]), tol);
      if (max_dim > 0 && static_cast<int>(basis.size()) >= max_dim) break;
    }
  }

  LieSpan out;
  out.basis = std::move(basis);
  out.dim = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace sptmbqc
