#ifndef SPTMBQC_LINALG_HPP
#define SPTMBQC_LINALG_HPP

#include "sptmbqc/common.hpp"

namespace sptmbqc {

Mat kron(const Mat& a, const Mat& b);
inline Mat dagger(const Mat& a) { return a.adjoint(); }
inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

// Hilbert-Schmidt inner product <A,B> = Tr(A^dag B) and its real part (the
// inner product used for real Lie-algebra spans).
inline cx hs_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }
inline double hs_inner_re(const Mat& a, const Mat& b) { return hs_inner(a, b).real(); }

double trace_distance(const Mat& rho, const Mat& sigma);

bool is_unitary(const Mat& u, double tol = 1e-10);
bool is_hermitian(const Mat& a, double tol = 1e-10);

// exp(G) for antihermitian G, via the eigendecomposition of -iG (exactly
// unitary up to roundoff, unlike a generic Pade exponential).
Mat expm_antihermitian(const Mat& g);

// Column-major vectorization; vec(A X B) = (B^T (x) A) vec(X).
Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);

// Partial traces for a bipartite space H_l (x) H_j, index = l * dim_j + j.
Mat partial_trace_second(const Mat& rho, int dim_l, int dim_j);  // keeps H_l
Mat partial_trace_first(const Mat& rho, int dim_l, int dim_j);   // keeps H_j

Mat random_gaussian(int rows, int cols, Rng& rng);
Mat random_unitary(int dim, Rng& rng);
Mat random_density(int dim, Rng& rng);

// Hermitize, clip tiny negative eigenvalues, renormalize to unit trace.
Mat project_to_density(const Mat& rho, double floor = -1e-10);

}  // namespace sptmbqc

#endif
