#pragma once

// Brute-force reference pipeline: direct lattice summation of the state and
// quadrature of every inner product. Independent of theta_engine and of the
// closed-form moment series.

#include <complex>

#include "thetastate/quadrature.hpp"
#include "thetastate/state_model.hpp"

namespace thetastate {

/// psi(theta) = N SUM_n f(theta - theta_bar + 2 pi n), summed directly over
/// |n| <= ceil((R + 2|x|) / (2 pi)) with R = sqrt(2 ln(1/eps) / lambda).
std::complex<double> lattice_psi(const State& state, double theta, double eps = 1e-15);

/// Largest |n| used by lattice_psi at offset x = theta - theta_bar.
std::int64_t lattice_window(double lambda, double x, double eps = 1e-15);

/// L psi synthesized from the Fourier coefficients over the series window.
std::complex<double> l_psi(const State& state, double theta);

enum class Weight { One, Theta, ThetaSq };
enum class Operand { Psi, LPsi };

/// Integral over the window of w(theta) conj(psi) O(psi).
std::complex<double> quad_inner(const State& state, Weight weight, Operand operand,
                                const QuadratureSpec& spec = {});

/// All quadrature moments in one refinement pass.
struct QuadMoments {
  double norm = 0.0;            // int |psi|^2
  double mean_theta = 0.0;      // int theta |psi|^2
  double mean_theta_sq = 0.0;   // int theta^2 |psi|^2
  double mean_L = 0.0;          // Re int conj(psi) L psi
  double mean_L_sq = 0.0;       // int |L psi|^2
  std::complex<double> theta_L_inner;  // int theta conj(psi) L psi
  std::complex<double> cross_corr;     // theta_L_inner - <theta><L>
  int panels = 0;
};

QuadMoments quad_moments(const State& state, const QuadratureSpec& spec = {});

struct ComparisonReport {
  double psi = 0.0;
  double norm = 0.0;
  double mean_theta = 0.0;
  double mean_theta_sq = 0.0;
  double mean_L = 0.0;
  double mean_L_sq = 0.0;
  double cross_corr = 0.0;

  double max_deviation() const;
  bool passes(double tol = 1e-9) const { return max_deviation() <= tol; }
};

/// Runs the series pipeline and the oracle pipeline and reports max absolute
/// deviations. psi is compared on a 101-point grid over the window.
ComparisonReport compare(const State& state, const QuadratureSpec& spec = {});

}  // namespace thetastate
