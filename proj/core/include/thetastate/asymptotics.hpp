#pragma once

// Closed-form small- and large-lambda models of the state.
//
// Small lambda, lbar = l + eps with 0 < eps < 1: only n = l and n = l + 1
// survive, giving
//
//   <L> = l + 1 / (1 + e^x),   var L = e^x / (1 + e^x)^2,   x = (1 - 2 eps) / lambda.
//
// Large lambda: a Gaussian of width 1 / sqrt(2 lambda) that saturates
// dtheta dL = 1/2.

#include <complex>
#include <cstdint>

#include "thetastate/moment_report.hpp"

namespace thetastate {

enum class Regime { BelowHalf, Half, AboveHalf };

struct BranchSpec {
  std::int64_t l = 0;
  double epsilon = 0.5;  // in (0, 1)
  Regime regime = Regime::Half;

  /// Splits lbar into floor and fractional part. Half iff the fractional part
  /// is exactly 1/2; near-half values are classified to a branch. Throws
  /// std::invalid_argument for integer lbar.
  static BranchSpec from_lbar(double l_bar);
};

/// Exponent magnitude beyond which exp() is replaced by its limit.
inline constexpr double kOverflowGuard = 700.0;

struct LMoments {
  double mean_L = 0.0;
  double var_L = 0.0;
};

LMoments small_lambda_L_moments(const BranchSpec& spec, double lambda);

struct LimitingValues {
  double delta_theta = 0.0;
  double delta_L = 0.0;
  double mean_L = 0.0;
};

/// lambda -> 0 limits: (sqrt(pi^2/3 - 2), 1/2, l + 1/2) at half-integers,
/// (pi / sqrt(3), 0, nearest branch integer) otherwise.
LimitingValues limiting_values(double l_bar);

MomentReport large_lambda_report(double lambda, double l_bar, double theta_bar);

/// Two-level model state
///   (1 + e^{i(theta - theta_bar)} e^{-x/2}) / sqrt(2 pi (1 + e^{-x})) * e^{i l (theta - theta_bar)}.
std::complex<double> small_lambda_state(const BranchSpec& spec, double lambda, double theta,
                                        double theta_bar);

}  // namespace thetastate
