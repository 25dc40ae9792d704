#ifndef SPTMBQC_MPS_HPP
#define SPTMBQC_MPS_HPP

#include <optional>

#include "sptmbqc/channel.hpp"
#include "sptmbqc/irrep.hpp"

namespace sptmbqc {

// Site tensor of a translation-invariant MPS in right-canonical gauge,
// sum_i A^i^dagger A^i = I. When the tensor lives in an SPT phase with
// on-site symmetry diagonal in this physical basis (the wire basis), the
// matrices factorize as A^i = C^i (x) B^i with C^i unitary on the logical
// space and B^i acting on the junk space.
struct MPSTensor {
  long long phys_dim = 0;     // d
  long long logical_dim = 0;  // D
  long long junk_dim = 0;     // kappa
  std::vector<Mat> matrices;  // A^i, (D kappa) x (D kappa)

  struct Factorization {
    std::vector<Mat> logical;  // C^i, D x D unitary
    std::vector<Mat> junk;     // B^i, kappa x kappa, sum B^dagger B = I
  };
  std::optional<Factorization> factorization;
  std::vector<Character> wire_basis_labels;  // chi_i per physical index
  FiniteAbelianGroup symmetry_group;         // the group the labels live on
};

// Checks the right-canonical identity and, when a factorization is present,
// A^i = C^i (x) B^i and unitarity of the C^i. Throws ValidationError.
void validate_tensor(const MPSTensor& t, double tol = 1e-10);

// Spin-1 AKLT resource state: A^i = sigma^i / sqrt(3), wire-basis characters
// of Z_2 x Z_2 labelling x, y, z.
MPSTensor aklt_tensor();

// A^i = C^i (x) B^i from logical operators and a junk Kraus family; the junk
// family is renormalized by S^{-1/2}, S = sum_i B^i^dagger B^i, which is what
// makes the tensor right-canonical.
MPSTensor spt_tensor(const LogicalOps& ops, const std::vector<Mat>& junk);

// Seeded generic junk family: complex Gaussian entries, renormalized,
// resampled until the junk channel is primitive and every calibration
// constant |nu_ij| clears 1e-6. Deterministic in (d, kappa, seed).
std::vector<Mat> random_primitive_junk(long long d, long long kappa,
                                       std::uint64_t seed);

struct TransferChannels {
  Channel full;                  // Kraus {A^i}
  std::optional<Channel> junk;   // Kraus {B^i} when factorized
};
TransferChannels transfer_channels(const MPSTensor& t);

struct FixedPointData {
  Mat rho_fix;      // junk-channel fixed point, PSD, unit trace
  Mat lambda_tilde; // adjoint fixed point, normalized Tr(lambda rho) = 1
  double lambda1 = 0.0;  // modulus of the second-largest eigenvalue
  double xi_tilde = 0.0; // -1 / ln(lambda1); 0 by convention when kappa = 1
};

// Spectral fixed points of the junk channel. kappa = 1 uses the scalar
// convention lambda1 = 0, xi_tilde = 0. Degenerate dominant eigenvalue
// (within 1e-9) raises NotPrimitive.
FixedPointData fixed_point_data(const Channel& junk_channel);

// nu_ij = Tr(lambda_tilde B^i rho_fix B^j^dagger)
Mat nu_from_fixed_point(const std::vector<Mat>& junk, const FixedPointData& fp);

// Length-L iterated Kraus span: rank of span{B^{i_L} ... B^{i_1}} at
// L = 4 kappa^2 equals kappa^2 iff the family is primitive (injectivity).
bool kraus_span_primitive(const std::vector<Mat>& kraus);

// max over h, i of || chi_i(h) A^i - (V(h)^dagger (x) I) A^i (V(h) (x) I) ||_F
double symmetry_check(const MPSTensor& t, const FiniteAbelianGroup& h,
                      const ProjectiveIrrep& irrep);

// Physical dimension d^b, blocked index lexicographic in (i_1, ..., i_b),
// blocked matrix A^{i_b} ... A^{i_1}, blocked character the product.
MPSTensor block_sites(const MPSTensor& t, long long b);

// JSON import/export, schema "sptmbqc.tensor/1", bit-exact double round-trip.
std::string tensor_to_json(const MPSTensor& t);
MPSTensor tensor_from_json(const std::string& text);

}  // namespace sptmbqc

#endif
