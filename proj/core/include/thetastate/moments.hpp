#pragma once

// Expectation values of theta and L from the Fourier double sums, grouped by
// index difference d = m - n:
//
//   S(d) = SUM_n a(n) a(n + d),   U(d) = SUM_n (n - lbar) a(n) a(n + d)
//
// where a(n)^2 = p(n). With phi = theta0 - theta_bar and window [a, a + 2 pi]:
//
//   <theta>   = (a + pi) + 2 SUM_{d>0} sin(d phi) S(d) / d
//   <theta^2> = 4 SUM_{d>0} cos(d phi) S(d) / d^2
//             + 4 (a + pi) SUM_{d>0} sin(d phi) S(d) / d + ((a + 2 pi)^3 - a^3) / (6 pi)

#include <complex>
#include <stdexcept>
#include <vector>

#include "thetastate/moment_report.hpp"
#include "thetastate/state_model.hpp"

namespace thetastate {

/// A computed moment set broke Cauchy-Schwarz, the Kraus bound, or the
/// boundary identity for (theta psi, L psi). Indicates a series bug.
class UncertaintyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kInequalitySlack = 1e-10;

double mean_L(const State& state);
double mean_L_sq(const State& state);
double mean_theta(const State& state);

/// General-window form.
double mean_theta_sq(const State& state);

/// Form specialised to the window [-pi, pi] (ignores theta0):
/// 4 SUM_{d>0} cos(d (theta_bar - pi)) S(d) / d^2 + pi^2 / 3.
double mean_theta_sq_symmetric_window(const State& state);

/// sqrt(<theta^2> - <theta>^2), clamped at 0.
double delta_theta(const State& state);

/// (theta psi, L psi) over the window.
std::complex<double> theta_L_inner(const State& state);

/// ((theta - <theta>) psi, (L - <L>) psi). For theta_bar = 0, theta0 = -pi
/// also checks (theta psi, L psi) = (i/2)(1 - 2 pi |psi(pi)|^2) to 1e-10 and
/// throws UncertaintyViolation otherwise.
std::complex<double> cross_correlation(const State& state);

/// All fields; throws UncertaintyViolation if Cauchy-Schwarz or the Kraus
/// bound fails by more than kInequalitySlack.
MomentReport uncertainty_report(const State& state);

/// Exactly evaluated distances from the half-integer limits, for lbar = l + 1/2,
/// theta_bar = 0, theta0 = -pi:
///   theta_sq_gap = (pi^2/3 - 2) - (delta theta)^2
///   L_sq_gap     = (delta L)^2 - 1/4
/// The two central terms n = l, l + 1 cancel identically and are left out, so
/// the gaps keep full relative precision when they are far below 1 ulp of the
/// limits. Throws std::invalid_argument for other parameters.
struct HalfIntegerGaps {
  double theta_sq_gap = 0.0;
  double L_sq_gap = 0.0;
};
HalfIntegerGaps half_integer_gaps(const State& state);

}  // namespace thetastate
