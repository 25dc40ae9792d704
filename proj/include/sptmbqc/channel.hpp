#ifndef SPTMBQC_CHANNEL_HPP
#define SPTMBQC_CHANNEL_HPP

#include "sptmbqc/linalg.hpp"

namespace sptmbqc {

// Completely positive map in Kraus form, E(X) = sum_k K_k X K_k^dag.
struct Channel {
  std::vector<Mat> kraus;

  int dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }

  Mat apply(const Mat& x) const;
  Mat apply_n(const Mat& x, int n) const;

  // Adjoint with respect to the HS inner product: E^dag(X) = sum K^dag X K.
  Channel adjoint() const;

  // Kraus completeness sum_k K^dag K (identity iff trace preserving).
  Mat completeness() const;
  bool is_trace_preserving(double tol = 1e-10) const;

  // dim^2 x dim^2 matrix S with S vec(X) = vec(E(X)), column-major vec.
  Mat superoperator() const;
};

struct EigenPair {
  cx value;
  Mat matrix;  // unit Frobenius norm
};

struct ChannelSpectrum {
  std::vector<EigenPair> pairs;  // sorted by |value| descending
  cx value(int k) const { return pairs[static_cast<size_t>(k)].value; }
};

// Full dense spectrum of the superoperator. Throws DimensionTooLarge above
// dim 64 and NonDiagonalizable when the dominant eigenvalue is defective
// (geometric multiplicity below algebraic within cluster_tol).
ChannelSpectrum channel_spectrum(const Channel& ch, double cluster_tol = 1e-9);

// Power-iteration fallback for the dominant eigenmatrix; at most
// 10*dim^2 iterations, Frobenius convergence threshold 1e-12.
Mat power_iteration_fixed_point(const Channel& ch, int max_iters = 0,
                                double thresh = 1e-12);

}  // namespace sptmbqc

#endif
