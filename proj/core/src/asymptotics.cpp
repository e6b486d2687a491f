#include "thetastate/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thetastate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("asymptotics: lambda must be positive and finite");
  }
}

void require_epsilon(const BranchSpec& spec) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("asymptotics: epsilon must lie in (0, 1)");
  }
}

}  // namespace

BranchSpec BranchSpec::from_lbar(double l_bar) {
  if (!std::isfinite(l_bar)) throw std::invalid_argument("BranchSpec: lbar must be finite");
  const double l = std::floor(l_bar);
  const double eps = l_bar - l;
  if (eps == 0.0) throw std::invalid_argument("BranchSpec: lbar is an integer");
  BranchSpec spec;
  spec.l = static_cast<std::int64_t>(l);
  spec.epsilon = eps;
  spec.regime = eps == 0.5 ? Regime::Half : (eps < 0.5 ? Regime::BelowHalf : Regime::AboveHalf);
  return spec;
}

LMoments small_lambda_L_moments(const BranchSpec& spec, double lambda) {
  require_lambda(lambda);
  require_epsilon(spec);
  const double l = static_cast<double>(spec.l);
  const double x = (1.0 - 2.0 * spec.epsilon) / lambda;
  if (x > kOverflowGuard) return {l, 0.0};
  if (x < -kOverflowGuard) return {l + 1.0, 0.0};
  const double e = std::exp(x);
  return {l + 1.0 / (1.0 + e), e / ((1.0 + e) * (1.0 + e))};
}

LimitingValues limiting_values(double l_bar) {
  if (!std::isfinite(l_bar)) throw std::invalid_argument("limiting_values: lbar must be finite");
  const double uniform = kPi / std::sqrt(3.0);
  if (l_bar == std::floor(l_bar)) return {uniform, 0.0, l_bar};
  const auto spec = BranchSpec::from_lbar(l_bar);
  const double l = static_cast<double>(spec.l);
  switch (spec.regime) {
    case Regime::Half:
      return {std::sqrt(kPi * kPi / 3.0 - 2.0), 0.5, l + 0.5};
    case Regime::BelowHalf:
      return {uniform, 0.0, l};
    case Regime::AboveHalf:
      return {uniform, 0.0, l + 1.0};
  }
  return {};
}

MomentReport large_lambda_report(double lambda, double l_bar, double theta_bar) {
  require_lambda(lambda);
  MomentReport r;
  r.mean_theta = theta_bar;
  r.delta_theta = 1.0 / std::sqrt(2.0 * lambda);
  r.mean_theta_sq = theta_bar * theta_bar + r.delta_theta * r.delta_theta;
  r.mean_L = l_bar;
  r.delta_L = std::sqrt(lambda / 2.0);
  r.mean_L_sq = l_bar * l_bar + r.delta_L * r.delta_L;
  r.product = 0.5;
  r.cross_corr = {0.0, 0.5};
  r.theta_L_inner = r.cross_corr + theta_bar * l_bar;
  r.psi_at_pi_sq = 0.0;
  r.kraus_bound = 0.5;
  return r;
}

std::complex<double> small_lambda_state(const BranchSpec& spec, double lambda, double theta,
                                        double theta_bar) {
  require_lambda(lambda);
  require_epsilon(spec);
  const double x = (1.0 - 2.0 * spec.epsilon) / lambda;
  const double phase = theta - theta_bar;
  const double l = static_cast<double>(spec.l);
  const double inv_root = 1.0 / std::sqrt(2.0 * kPi);
  if (x > kOverflowGuard) return std::polar(inv_root, l * phase);
  if (x < -kOverflowGuard) return std::polar(inv_root, (l + 1.0) * phase);

  std::complex<double> amp;
  if (x >= 0.0) {
    const double h = std::exp(-0.5 * x);
    amp = (1.0 + std::polar(h, phase)) / std::sqrt(1.0 + h * h);
  } else {
    // divide numerator and denominator by e^{-x/2}
    const double h = std::exp(0.5 * x);
    amp = (h + std::polar(1.0, phase)) / std::sqrt(h * h + 1.0);
  }
  return inv_root * amp * std::polar(1.0, l * phase);
}

}  // namespace thetastate
