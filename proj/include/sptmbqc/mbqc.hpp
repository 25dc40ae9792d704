#ifndef SPTMBQC_MBQC_HPP
#define SPTMBQC_MBQC_HPP

#include "sptmbqc/mps.hpp"

namespace sptmbqc {

// Orthonormal single-site measurement basis. Column s of `vectors` is the
// outcome state |s>. byproduct_assignment[s] is the wire label whose logical
// operator C^label the outcome imprints on the virtual space; the matching
// group element comes from wire_frame_elements.
struct MeasurementBasis {
  Mat vectors;
  std::vector<int> byproduct_assignment;
  bool is_wire = false;

  int dim() const { return static_cast<int>(vectors.cols()); }
};

// Gram matrix = I to tol, assignment a valid wire label per outcome.
void validate_basis(const MeasurementBasis& b, double tol = 1e-10);

MeasurementBasis wire_basis(const MPSTensor& t);

// {.., |i> + dtheta e^{i phi}|j>, |j> - dtheta e^{-i phi}|i>, ..}, both
// normalized; exactly orthonormal. Perturbative guard |dtheta| <= 0.3.
MeasurementBasis tilted_basis(const MPSTensor& t, int i, int j, double dtheta,
                              double phi);

// Finite two-vector rotation by angle beta: vectors i and j become
// cos(beta/2)|i> + sin(beta/2)e^{i phi}|j> and cos(beta/2)|j> -
// sin(beta/2)e^{-i phi}|i>. Coincides with tilted_basis at dtheta =
// tan(beta/2); no perturbative cap.
MeasurementBasis rotated_basis(const MPSTensor& t, int i, int j, double beta,
                               double phi);

// Accumulated byproduct; composition is addition in the symmetry group.
struct ByproductFrame {
  GroupElement accumulated;
};

// Group element h_i of each wire label, defined by the conjugation action
// C^i^dag C^j C^i = chi_j(h_i) C^j for all labels j. Unique for the tensors
// built here (the labels separate points of H); ambiguity is a ValidationError.
std::vector<GroupElement> wire_frame_elements(const MPSTensor& t);

// Basis a frame-carrying party actually measures: vectors premultiplied by
// the physical symmetry action u(h) = diag_i chi_i(h). Measuring the adapted
// basis on the frame-rotated state reproduces the intended statistics exactly.
MeasurementBasis adapt_basis(const MeasurementBasis& b, const MPSTensor& t,
                             const GroupElement& frame);

// Density matrix on logical (x) junk, index l * junk_dim + j.
struct MixedVirtualState {
  Mat rho;
  long long logical_dim = 0;
  long long junk_dim = 0;

  Mat logical_reduced() const;
  Mat junk_reduced() const;
};

// unit trace to tol, PSD to an eigenvalue floor of -tol
void validate_state(const MixedVirtualState& s, double tol = 1e-10);

MixedVirtualState product_state(const Mat& logical, const Mat& junk);

// One exact measurement step, summed over outcomes with the byproduct
// correction folded into the Kraus operators:
//   sigma <- sum_s Gamma_s sigma Gamma_s^dag,
//   Gamma_s = (C^{h_s}^dag (x) I) A[v_s],  A[v] = sum_i <v|i> A^i.
// Renormalizes to unit trace; the pre-normalization trace (1 up to roundoff
// for an orthonormal basis) is reported through pre_trace when non-null.
MixedVirtualState sum_over_outcomes_step(const MixedVirtualState& sigma,
                                         const MeasurementBasis& basis,
                                         const MPSTensor& t,
                                         double* pre_trace = nullptr);

// m wire-basis steps; acts as I (x) E~^m on the junk factor. The scalar junk
// channel of a right-canonical tensor is the identity, so kappa = 1 returns
// sigma unchanged.
MixedVirtualState pump_fixed_point(const MixedVirtualState& sigma,
                                   const MPSTensor& t, long long m);

// Calibration constants nu_ij = Tr(Lambda~ B^i rho_fix B^j^dag) and the
// scalar nu = sum_i nu_ii. delta_ij = arg(nu_ij).
struct NuMatrix {
  Mat nu;
  double nu_scalar = 0.0;

  double modulus(int i, int j) const;
  double phase(int i, int j) const;
  bool is_dead(int i, int j) const { return modulus(i, j) < 1e-6; }
};

NuMatrix calibrate_nu(const MPSTensor& t);

// CSV with header i,j,re,im,abs,phase,dead
std::string calibration_csv(const NuMatrix& nu);

// T(i,j;dtheta,phi) = exp{ dtheta (|nu_ij|/nu) (e^{-i(phi+delta_ij)}
// C^i^dag C^j - e^{+i(phi+delta_ij)} C^j^dag C^i) }: the logical unitary one
// tilted-basis step realizes to first order in dtheta, after pumping.
Mat predicted_gate(const MPSTensor& t, int i, int j, double dtheta, double phi,
                   const NuMatrix& nu);

// exp{-i (theta/2) h} with h = i(e^{i phi_gen} C^i^dag C^j - h.c.)/2, the
// finite rotation a compiled program aims at.
Mat ideal_rotation(const MPSTensor& t, int i, int j, double phi_gen,
                   double theta);

struct ExecutionComparison {
  MixedVirtualState out;
  double residual = 0.0;  // trace distance to predicted_gate (x) rho_fix
  double dtheta = 0.0;
  long long pump_m = 0;
};

// One tilted step from logical_in (x) rho_fix, then m pump steps; residual
// against the first-order prediction.
ExecutionComparison execute_and_compare(const Mat& logical_in,
                                        const MPSTensor& t, int i, int j,
                                        double dtheta, double phi, long long m,
                                        const NuMatrix& nu);

struct GateStep {
  MeasurementBasis basis;
  long long pump = 0;
};

struct GateProgram {
  std::vector<GateStep> steps;
  int i = 0;
  int j = 0;
  double phi_gen = 0.0;
  double theta = 0.0;
  long long n_steps = 0;         // N
  long long pump_m = 0;          // m, per step
  double predicted_cost = 0.0;   // C = N (m + 1)
};

// Splits the target rotation into N tilted steps of basis angle
// beta = (theta/N)(nu/|nu_ij|)/2 (realized logical angle theta/N each),
// N = ceil(max(theta^2/eps, theta/0.05, theta(nu/|nu_ij|)/(2*0.05))),
// measurement phase -phi_gen - delta_ij, pump length
// m = ceil(max(2 xi~ ln N, 1)) per step (0 when kappa = 1).
GateProgram compile_rotation(const MPSTensor& t, const NuMatrix& nu, int i,
                             int j, double phi_gen, double theta, double eps);

// Exact (sum-over-outcomes) execution from logical_in (x) rho_fix.
MixedVirtualState run_program(const GateProgram& p, const Mat& logical_in,
                              const MPSTensor& t);

struct SampleResult {
  MixedVirtualState rho_bar;  // mean frame-corrected endpoint
  std::vector<std::vector<long long>> outcome_counts;  // [step][outcome]
  std::uint64_t outcome_log_hash = 0;                  // FNV-1a over outcomes
  std::vector<Mat> shot_logical_states;                // when keep_shots
};

// Monte-Carlo trajectories with Born-rule outcomes. The byproduct frame is
// tracked per trajectory as a group element and resolved by measuring the
// adapted basis; endpoints are un-rotated by the accumulated byproduct before
// averaging. Wire-only programs take a factorized path on which the logical
// factor is never multiplied at all. Deterministic in (seed, shot index).
SampleResult sample_trajectories(const GateProgram& p, const Mat& logical_in,
                                 const MPSTensor& t, long long shots,
                                 std::uint64_t seed, bool keep_shots = false);

// SD of the mean under resampling with replacement.
double bootstrap_sd(const std::vector<double>& xs, int resamples,
                    std::uint64_t seed);

// p(o) = Tr[(I (x) Lambda~)(I (x) E~^k)(A[o] sigma A[o]^dag)]; frame
// independent, sums to 1 for orthonormal bases.
std::vector<double> readout_probabilities(const MixedVirtualState& sigma,
                                          const MeasurementBasis& basis,
                                          const MPSTensor& t, long long k);

struct ScanRow {
  long long n = 0;
  long long m = 0;
  double error = 0.0;
};

// For each (N, m) in the cross product, runs the N-step compiled rotation
// with pump length m and records the trace distance of the logical output to
// the ideal rotation of the probe state.
std::vector<ScanRow> error_scan(const MPSTensor& t, int i, int j, double theta,
                                const std::vector<long long>& n_list,
                                const std::vector<long long>& m_list);

// CSV with header N,m,error
std::string scan_csv(const std::vector<ScanRow>& rows);

// Secondary estimator of |nu_ij|/nu: compile and run a theta = pi/4 rotation,
// fit the realized logical angle by fidelity maximization, invert the
// per-step rescaling. Cross-validates the spectral calibration.
double operational_nu_ratio(const MPSTensor& t, const NuMatrix& nu, int i,
                            int j, double phi_gen);

}  // namespace sptmbqc

#endif
