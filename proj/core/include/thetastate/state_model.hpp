#pragma once

// The periodic Gaussian state on the circle
//
//   psi(theta) = N SUM_n f(theta - theta_bar + 2 pi n),
//   f(x) = exp(i lbar x) exp(-lambda x^2 / 2),
//
// with Fourier coefficients
//
//   c(n) = N / sqrt(2 pi lambda) exp(-i n theta_bar) exp(-(n - lbar)^2 / (2 lambda)).
//
// psi is evaluated through theta_3 in one of two forms: the lattice form
// (nome exp(-2 lambda pi^2)) for large lambda and the Fourier form
// (nome exp(-1 / (2 lambda))) for small lambda.

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "thetastate/moment_report.hpp"

namespace thetastate {

struct StateParams {
  double lambda = 1.0;
  double l_bar = 0.0;
  double theta_bar = 0.0;
  double theta0 = -std::numbers::pi;  // window is [theta0, theta0 + 2 pi]
};

enum class Representation { LatticeTheta, FourierTheta };

/// Both nomes equal exp(-pi) here.
inline constexpr double kCrossoverLambda = 1.0 / (2.0 * std::numbers::pi);

/// Validated, immutable state. Caches the normalization and the normalized
/// Fourier amplitudes a(n) = sqrt(2 pi) |c(n)| over the series window, so that
/// p(n) = a(n)^2 and SUM a(n)^2 = 1.
class State {
 public:
  /// Throws std::invalid_argument if lambda <= 0 or any parameter is not finite.
  explicit State(const StateParams& params);

  const StateParams& params() const { return params_; }
  double lambda() const { return params_.lambda; }
  double l_bar() const { return params_.l_bar; }
  double theta_bar() const { return params_.theta_bar; }
  double theta0() const { return params_.theta0; }

  /// N. Overflows to +inf only for lambda below ~1e-3 with lbar far from an
  /// integer; log_normalization() stays exact.
  double normalization() const;
  double log_normalization() const { return log_norm_; }

  std::int64_t n_min() const { return n_min_; }
  std::int64_t n_max() const { return n_min_ + static_cast<std::int64_t>(amp_.size()) - 1; }
  std::span<const double> amplitudes() const { return amp_; }

  /// a(n) for any integer n, zero-cost inside the window.
  double amplitude(std::int64_t n) const;

  /// Bound on SUM p(n) outside [n_min, n_max].
  double tail_mass_bound() const { return tail_mass_; }

 private:
  StateParams params_;
  double log_norm_ = 0.0;
  double log_weight_shift_ = 0.0;  // max_n of -(n - lbar)^2 / (2 lambda)
  double log_weight_sum_ = 0.0;    // log SUM_n exp(2 (lw_n - shift))
  std::int64_t n_min_ = 0;
  std::vector<double> amp_;
  double tail_mass_ = 0.0;
};

/// Probability distribution of L on the series window.
struct ProbDist {
  std::int64_t l_min = 0;
  std::int64_t l_max = 0;
  std::vector<double> weights;
  double tail_mass_bound = 0.0;

  double at(std::int64_t l) const {
    return (l < l_min || l > l_max) ? 0.0 : weights[static_cast<std::size_t>(l - l_min)];
  }
};

double normalization(const State& state);

Representation representation_for(double lambda);

/// psi(theta) using representation_for(lambda).
std::complex<double> psi(const State& state, double theta);

/// psi(theta) through a specific theta_3 form.
std::complex<double> psi(const State& state, double theta, Representation rep);

std::complex<double> fourier_coefficient(const State& state, std::int64_t n);

double prob_l(const State& state, std::int64_t l);

ProbDist prob_dist(const State& state);

/// Moments of the renormalized n = 0 term, exp(i lbar theta) exp(-lambda theta^2 / 2)
/// restricted to [-pi, pi] (theta_bar = 0). Integrals by composite Gauss-Legendre.
/// <L^2> is the interval quadratic form integral of |psi'|^2.
MomentReport padgett_state_moments(double lambda, double l_bar);

}  // namespace thetastate
