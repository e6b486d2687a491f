#pragma once

// Jacobi theta_3 evaluation with certified truncation.
//
//   theta_3(z, q) = SUM_{n=-inf}^{inf} q^(n^2) exp(2 i n z),   0 <= q < 1
//
// The series is summed over a window [c - K, c + K] centred on the index of
// the largest term. K is the smallest radius whose geometric tail majorant is
// below the requested absolute tolerance.

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace thetastate {

inline constexpr double kDefaultEps = 1e-15;
inline constexpr std::int64_t kWindowCap = 1'000'000;

/// Index window for a truncated lattice series and a bound on what was dropped.
struct TruncationPlan {
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  double tail_bound = 0.0;

  std::int64_t radius() const { return (n_max - n_min) / 2; }
};

/// Raised when a series window would exceed kWindowCap or the result is not
/// representable. Seen only if a caller picked the wrong representation.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThetaArgs {
  std::complex<double> z;
  double q = 0.0;
  double eps = kDefaultEps;
  // Natural log of a factor multiplied into every term. Lets callers fold large
  // prefactors into the sum instead of multiplying an overflowed result.
  // The eps certificate applies to the scaled sum.
  std::complex<double> log_scale = 0.0;
  // If nonzero, ln q; used instead of q so nomes below the double range
  // (e.g. exp(-1 / (2 lambda)) at tiny lambda) keep their value.
  double log_nome = 0.0;

  double ln_q() const;
};

/// Symmetric window [-M, M] for SUM q^(n^2) with 2 q^(M^2) / (1 - q^(2M+1)) <= eps,
/// M >= 1 and minimal. Throws std::invalid_argument for q outside [0, 1) or
/// eps <= 0.
TruncationPlan truncation_bound(double q, double eps = kDefaultEps);

/// Window used by theta3 for complex z (and a log-scale prefactor).
TruncationPlan theta3_window(const ThetaArgs& args);

std::complex<double> theta3(const ThetaArgs& args);

inline std::complex<double> theta3(std::complex<double> z, double q,
                                   double eps = kDefaultEps) {
  return theta3(ThetaArgs{z, q, eps, 0.0});
}

}  // namespace thetastate
