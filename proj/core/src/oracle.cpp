#include "thetastate/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "thetastate/moments.hpp"
#include "thetastate/theta_engine.hpp"

namespace thetastate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::int64_t lattice_window(double lambda, double x, double eps) {
  if (!(lambda > 0.0) || !(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("lattice_window: need lambda > 0 and 0 < eps < 1");
  }
  const double reach = std::sqrt(2.0 * std::log(1.0 / eps) / lambda);
  const double n = std::ceil((reach + 2.0 * std::abs(x)) / kTwoPi);
  if (!(n <= static_cast<double>(kWindowCap))) {
    throw NonConvergence("lattice_psi: window exceeds cap");
  }
  return static_cast<std::int64_t>(n);
}

std::complex<double> lattice_psi(const State& state, double theta, double eps) {
  const double lambda = state.lambda();
  const double l_bar = state.l_bar();
  const double x = theta - state.theta_bar();
  const std::int64_t reach = lattice_window(lambda, x, eps);
  auto f = [&](std::int64_t n) {
    const double u = x + kTwoPi * static_cast<double>(n);
    return std::polar(std::exp(-0.5 * lambda * u * u), l_bar * u);
  };
  std::complex<double> sum = 0.0;
  for (std::int64_t n = reach; n >= 1; --n) sum += f(n) + f(-n);
  sum += f(0);
  return state.normalization() * sum;
}

std::complex<double> l_psi(const State& state, double theta) {
  std::complex<double> sum = 0.0;
  for (std::int64_t n = state.n_max(); n >= state.n_min(); --n) {
    sum += static_cast<double>(n) * fourier_coefficient(state, n) *
           std::polar(1.0, static_cast<double>(n) * theta);
  }
  return sum;
}

std::complex<double> quad_inner(const State& state, Weight weight, Operand operand,
                                const QuadratureSpec& spec) {
  const double a = state.theta0();
  auto integrand = [&](double t) {
    const std::complex<double> p = lattice_psi(state, t);
    const std::complex<double> o = operand == Operand::Psi ? p : l_psi(state, t);
    const double w = weight == Weight::One ? 1.0 : (weight == Weight::Theta ? t : t * t);
    return w * std::conj(p) * o;
  };
  return integrate<std::complex<double>>(integrand, a, a + kTwoPi, spec).value;
}

QuadMoments quad_moments(const State& state, const QuadratureSpec& spec) {
  using Row = std::array<std::complex<double>, 6>;
  const double a = state.theta0();
  auto integrand = [&](double t) {
    const std::complex<double> p = lattice_psi(state, t);
    const std::complex<double> lp = l_psi(state, t);
    const double dens = std::norm(p);
    const std::complex<double> pl = std::conj(p) * lp;
    return Row{dens, t * dens, t * t * dens, pl, std::norm(lp), t * pl};
  };
  const auto result = integrate<Row>(integrand, a, a + kTwoPi, spec);
  const Row& v = result.value;

  QuadMoments m;
  m.norm = v[0].real();
  m.mean_theta = v[1].real();
  m.mean_theta_sq = v[2].real();
  m.mean_L = v[3].real();
  m.mean_L_sq = v[4].real();
  m.theta_L_inner = v[5];
  m.cross_corr = m.theta_L_inner - m.mean_theta * m.mean_L;
  m.panels = result.panels;
  return m;
}

double ComparisonReport::max_deviation() const {
  return std::max({psi, norm, mean_theta, mean_theta_sq, mean_L, mean_L_sq, cross_corr});
}

ComparisonReport compare(const State& state, const QuadratureSpec& spec) {
  ComparisonReport report;
  constexpr int kGrid = 101;
  for (int k = 0; k < kGrid; ++k) {
    const double t = state.theta0() + kTwoPi * k / (kGrid - 1);
    report.psi = std::max(report.psi, std::abs(lattice_psi(state, t) - psi(state, t)));
  }

  const QuadMoments q = quad_moments(state, spec);
  const double ml = mean_L(state);
  const double mt = mean_theta(state);
  const auto cross = theta_L_inner(state) - mt * ml;

  report.norm = std::abs(q.norm - 1.0);
  report.mean_theta = std::abs(q.mean_theta - mt);
  report.mean_theta_sq = std::abs(q.mean_theta_sq - mean_theta_sq(state));
  report.mean_L = std::abs(q.mean_L - ml);
  report.mean_L_sq = std::abs(q.mean_L_sq - mean_L_sq(state));
  report.cross_corr = std::abs(q.cross_corr - cross);
  return report;
}

}  // namespace thetastate
