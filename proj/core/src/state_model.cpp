#include "thetastate/state_model.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "thetastate/quadrature.hpp"
#include "thetastate/theta_engine.hpp"

namespace thetastate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesEps = 1e-18;

double log_weight(double lambda, double l_bar, std::int64_t n) {
  const double d = static_cast<double>(n) - l_bar;
  return -d * d / (2.0 * lambda);
}

}  // namespace

State::State(const StateParams& params) : params_(params) {
  const auto& p = params_;
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) {
    throw std::invalid_argument("State: lambda must be positive and finite");
  }
  if (!std::isfinite(p.l_bar) || !std::isfinite(p.theta_bar) || !std::isfinite(p.theta0)) {
    throw std::invalid_argument("State: parameters must be finite");
  }

  // Products w_m w_n need the exp(-1/(2 lambda)) nome. Two extra indices absorb
  // the offset of lbar from the centre index and the n^2 factor of <L^2>.
  const double q = std::exp(-1.0 / (2.0 * p.lambda));
  const std::int64_t radius = truncation_bound(q, kSeriesEps).radius() + 2;
  const std::int64_t centre = std::llround(p.l_bar);
  n_min_ = centre - radius;

  const auto count = static_cast<std::size_t>(2 * radius + 1);
  amp_.resize(count);
  log_weight_shift_ = log_weight(p.lambda, p.l_bar, centre);
  for (std::int64_t n = n_min_; n <= centre + radius; ++n) {
    log_weight_shift_ = std::max(log_weight_shift_, log_weight(p.lambda, p.l_bar, n));
  }
  double z = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = n_min_ + static_cast<std::int64_t>(i);
    amp_[i] = std::exp(log_weight(p.lambda, p.l_bar, n) - log_weight_shift_);
    z += amp_[i] * amp_[i];
  }
  const double root = std::sqrt(z);
  for (double& a : amp_) a /= root;
  log_weight_sum_ = std::log(z);

  // N^2 / lambda = 1 / SUM_n w_n^2
  log_norm_ = 0.5 * (std::log(p.lambda) - 2.0 * log_weight_shift_ - log_weight_sum_);

  // Outside the window (n - lbar)^2 >= (|n - centre| - 1)^2, so the excluded
  // mass is bounded by the exp(-1/lambda) theta tail at radius - 1.
  const double m = static_cast<double>(radius - 1);
  const double log_tail = std::log(2.0) - m * m / p.lambda -
                          std::log1p(-std::exp(-(2.0 * m + 1.0) / p.lambda)) -
                          2.0 * log_weight_shift_ - log_weight_sum_;
  tail_mass_ = std::exp(log_tail);
}

double State::normalization() const { return std::exp(log_norm_); }

double State::amplitude(std::int64_t n) const {
  if (n >= n_min_ && n <= n_max()) return amp_[static_cast<std::size_t>(n - n_min_)];
  return std::exp(log_weight(params_.lambda, params_.l_bar, n) - log_weight_shift_ -
                  0.5 * log_weight_sum_);
}

double normalization(const State& state) { return state.normalization(); }

Representation representation_for(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("representation_for: lambda must be positive");
  return lambda >= kCrossoverLambda ? Representation::LatticeTheta
                                    : Representation::FourierTheta;
}

std::complex<double> psi(const State& state, double theta) {
  return psi(state, theta, representation_for(state.lambda()));
}

std::complex<double> psi(const State& state, double theta, Representation rep) {
  const double lambda = state.lambda();
  const double l_bar = state.l_bar();
  // psi depends on theta only through x mod 2 pi.
  const double x = std::remainder(theta - state.theta_bar(), 2.0 * kPi);

  ThetaArgs args;
  if (rep == Representation::LatticeTheta) {
    // N exp(i lbar x) exp(-lambda x^2 / 2) theta3(pi (lbar + i lambda x), exp(-2 lambda pi^2))
    args.z = {kPi * l_bar, kPi * lambda * x};
    args.log_nome = -2.0 * lambda * kPi * kPi;
    args.log_scale = {state.log_normalization() - 0.5 * lambda * x * x, l_bar * x};
  } else {
    // N / sqrt(2 pi lambda) exp(-lbar^2 / (2 lambda)) theta3(x/2 - i lbar / (2 lambda), exp(-1/(2 lambda))).
    // The integer part c of lbar = c + delta is shifted out of the series as the
    // phase exp(i c x), which keeps Im z at O(1 / lambda) instead of O(lbar / lambda).
    const double c = std::round(l_bar);
    const double delta = l_bar - c;
    args.z = {0.5 * x, -delta / (2.0 * lambda)};
    args.log_nome = -1.0 / (2.0 * lambda);
    args.log_scale = {state.log_normalization() - 0.5 * std::log(2.0 * kPi * lambda) -
                          delta * delta / (2.0 * lambda),
                      c * x};
  }
  return theta3(args);
}

std::complex<double> fourier_coefficient(const State& state, std::int64_t n) {
  const double phase = -static_cast<double>(n) * state.theta_bar();
  return std::polar(state.amplitude(n) / std::sqrt(2.0 * kPi), phase);
}

double prob_l(const State& state, std::int64_t l) {
  const double a = state.amplitude(l);
  return a * a;
}

ProbDist prob_dist(const State& state) {
  ProbDist dist;
  dist.l_min = state.n_min();
  dist.l_max = state.n_max();
  dist.weights.reserve(state.amplitudes().size());
  for (double a : state.amplitudes()) dist.weights.push_back(a * a);
  dist.tail_mass_bound = state.tail_mass_bound();
  return dist;
}

MomentReport padgett_state_moments(double lambda, double l_bar) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(l_bar)) {
    throw std::invalid_argument("padgett_state_moments: lambda must be positive and finite");
  }
  // |psi|^2 = exp(-lambda theta^2) / Z on [-pi, pi]
  using Moments = std::array<double, 3>;
  const auto result = integrate<Moments>(
      [lambda](double t) {
        const double g = std::exp(-lambda * t * t);
        return Moments{g, t * g, t * t * g};
      },
      -kPi, kPi);
  const double z = result.value[0];

  MomentReport r;
  r.mean_theta = result.value[1] / z;
  r.mean_theta_sq = result.value[2] / z;
  r.delta_theta = std::sqrt(std::max(0.0, r.mean_theta_sq - r.mean_theta * r.mean_theta));
  // L psi = (lbar + i lambda theta) psi
  r.mean_L = l_bar;
  r.mean_L_sq = l_bar * l_bar + lambda * lambda * r.mean_theta_sq;
  r.delta_L = lambda * std::sqrt(r.mean_theta_sq);
  r.product = r.delta_theta * r.delta_L;
  r.theta_L_inner = {l_bar * r.mean_theta, lambda * r.mean_theta_sq};
  r.cross_corr = r.theta_L_inner - r.mean_theta * r.mean_L;
  r.psi_at_pi_sq = std::exp(-lambda * kPi * kPi) / z;
  r.kraus_bound = std::abs(1.0 - 2.0 * kPi * r.psi_at_pi_sq) / 2.0;
  r.norm_residual = 0.0;
  return r;
}

}  // namespace thetastate
