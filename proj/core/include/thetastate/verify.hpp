#pragma once

// Invariant suite behind `thetastate verify`.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace thetastate {

/// lambda in {0.05, 0.1, 0.5, 1/(2 pi), 1, 5, 20}
std::vector<double> standard_lambdas();
/// lbar in {0, 0.25, 0.45, 0.5, 0.55, 1, 1.5}
std::vector<double> standard_lbars();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Mutation switch: negates Im (theta psi, L psi) before the boundary
  // identity check. The suite must then report FAIL on that check.
  bool flip_cross_sign = false;
  // Called after each check; lets the CLI stream results.
  std::function<void(const CheckResult&)> on_result;
};

/// Re (theta psi, L psi) = 0 and Im (theta psi, L psi) = (1 - 2 pi |psi(pi)|^2) / 2.
bool theta_L_identity_holds(std::complex<double> inner, double psi_edge_sq,
                            double tol_re = 1e-12, double tol_im = 1e-10);

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace thetastate
