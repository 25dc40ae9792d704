#ifndef SPTMBQC_COMMON_HPP
#define SPTMBQC_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sptmbqc {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Validation errors (bad inputs, contract violations) map to CLI exit code 2,
// numerical failures (degeneracies, ambiguous tolerances, ...) to exit code 3.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotMNCError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotSquareFormError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotGeneratingError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotNormalizableError : ValidationError {
  using ValidationError::ValidationError;
};
struct DeadDirectionError : ValidationError {
  using ValidationError::ValidationError;
};
struct DimensionTooLargeError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotADivisorError : ValidationError {
  using ValidationError::ValidationError;
};

struct NotPrimitiveError : NumericalError {
  using NumericalError::NumericalError;
};
struct NonDiagonalizableError : NumericalError {
  using NumericalError::NumericalError;
};
struct ToleranceAmbiguityError : NumericalError {
  using NumericalError::NumericalError;
};
struct RetriesExhaustedError : NumericalError {
  using NumericalError::NumericalError;
};
struct InconsistentVerdictError : NumericalError {
  using NumericalError::NumericalError;
};

// Deterministic RNG. mt19937_64 for the stream; Gaussians via Box-Muller on
// 53-bit uniforms (std::normal_distribution output is not portable across
// standard libraries, which would unfreeze seeded expected values).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  cx gaussian_cx() { return cx(gaussian(), gaussian()); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64: derives independent child seeds (trajectory streams).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sptmbqc

#endif
