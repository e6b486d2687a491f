#pragma once

#include <complex>

namespace thetastate {

/// Moments, dispersions and uncertainty-relation data at one parameter point.
struct MomentReport {
  double mean_theta = 0.0;
  double mean_theta_sq = 0.0;
  double mean_L = 0.0;
  double mean_L_sq = 0.0;
  double delta_theta = 0.0;
  double delta_L = 0.0;
  double product = 0.0;                // delta_theta * delta_L
  std::complex<double> cross_corr;     // ((theta - <theta>) psi, (L - <L>) psi)
  std::complex<double> theta_L_inner;  // (theta psi, L psi)
  double kraus_bound = 0.0;            // |1 - 2 pi |psi(edge)|^2| / 2
  double psi_at_pi_sq = 0.0;           // |psi|^2 at the window edge
  double norm_residual = 0.0;
};

}  // namespace thetastate
