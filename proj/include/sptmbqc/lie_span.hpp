#ifndef SPTMBQC_LIE_SPAN_HPP
#define SPTMBQC_LIE_SPAN_HPP

#include "sptmbqc/linalg.hpp"

namespace sptmbqc {

struct LieSpan {
  int dim = 0;
  std::vector<Mat> basis;  // orthonormal under Re Tr(A^dag B)
};

// Real Lie-algebra closure of a set of antihermitian generators: seed with a
// Gram-Schmidt pass over the inputs, then iterate commutators of basis pairs
// (in deterministic index order) until no new direction appears. A candidate
// whose residual norm falls in (tol, 10*tol] is neither clearly new nor
// clearly in-span and raises ToleranceAmbiguity; callers should tighten tol.
// If max_dim > 0 the closure stops once that dimension is reached (the span
// is then the full algebra and closed by construction).
LieSpan real_span_closure(const std::vector<Mat>& generators, double tol = 1e-9,
                          int max_dim = 0);

}  // namespace sptmbqc

#endif
