#include "thetastate/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace thetastate {

namespace {

constexpr double kPi = std::numbers::pi;

struct PairSums {
  std::vector<double> s;  // s[d], d >= 1; s[0] unused
  std::vector<double> u;
};

PairSums pair_sums(const State& state) {
  const auto a = state.amplitudes();
  const std::size_t w = a.size();
  const double l_bar = state.l_bar();
  const double n0 = static_cast<double>(state.n_min());
  PairSums out{std::vector<double>(w, 0.0), std::vector<double>(w, 0.0)};
  for (std::size_t d = 1; d < w; ++d) {
    double s = 0.0;
    double u = 0.0;
    for (std::size_t i = 0; i + d < w; ++i) {
      const double prod = a[i] * a[i + d];
      s += prod;
      u += (n0 + static_cast<double>(i) - l_bar) * prod;
    }
    out.s[d] = s;
    out.u[d] = u;
  }
  return out;
}

// First and second central-offset moments: SUM (n - lbar)^k p(n).
struct OffsetMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double var = 0.0;  // central, summed in a second pass to keep relative accuracy
};

OffsetMoments offset_moments(const State& state) {
  const auto a = state.amplitudes();
  const double n0 = static_cast<double>(state.n_min());
  OffsetMoments m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double off = n0 + static_cast<double>(i) - state.l_bar();
    const double p = a[i] * a[i];
    m.m1 += off * p;
    m.m2 += off * off * p;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dev = n0 + static_cast<double>(i) - state.l_bar() - m.m1;
    m.var += dev * dev * a[i] * a[i];
  }
  return m;
}

struct ThetaMoments {
  double mean = 0.0;
  double mean_sq = 0.0;
};

ThetaMoments theta_moments(const State& state, const PairSums& ps) {
  const double a = state.theta0();
  const double phi = a - state.theta_bar();
  double sin_sum = 0.0;
  double cos_sum = 0.0;
  for (std::size_t d = ps.s.size(); d-- > 1;) {
    const double dd = static_cast<double>(d);
    sin_sum += std::sin(dd * phi) * ps.s[d] / dd;
    cos_sum += std::cos(dd * phi) * ps.s[d] / (dd * dd);
  }
  const double b = a + 2.0 * kPi;
  ThetaMoments t;
  t.mean = (a + kPi) + 2.0 * sin_sum;
  t.mean_sq = 4.0 * cos_sum + 4.0 * (a + kPi) * sin_sum + (b * b * b - a * a * a) / (6.0 * kPi);
  return t;
}

std::complex<double> theta_L_inner(const State& state, const PairSums& ps, double mean_l) {
  const double a = state.theta0();
  const double phi = a - state.theta_bar();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t d = ps.s.size(); d-- > 1;) {
    const double dd = static_cast<double>(d);
    const double sn = std::sin(dd * phi);
    const double cs = std::cos(dd * phi);
    const double first_moment = ps.u[d] + state.l_bar() * ps.s[d];  // SUM m a(m) a(m+d)
    re += 2.0 * sn * first_moment / dd + ps.s[d] * sn;
    im -= ps.s[d] * cs;
  }
  return {mean_l * (a + kPi) + re, im};
}

double sq_root_clamped(double v) { return std::sqrt(std::max(0.0, v)); }

void check_boundary_identity(const State& state, std::complex<double> inner) {
  const double edge = std::norm(psi(state, state.theta0() + 2.0 * kPi));
  const double expected = 0.5 * (1.0 - 2.0 * kPi * edge);
  const double dev = std::abs(inner - std::complex<double>(0.0, expected));
  if (dev > kInequalitySlack) {
    throw UncertaintyViolation("(theta psi, L psi) deviates from (i/2)(1 - 2 pi |psi(pi)|^2) by " +
                               std::to_string(dev));
  }
}

bool symmetric_origin(const State& state) {
  return state.theta_bar() == 0.0 && state.theta0() == -kPi;
}

}  // namespace

double mean_L(const State& state) { return state.l_bar() + offset_moments(state).m1; }

double mean_L_sq(const State& state) {
  const auto m = offset_moments(state);
  const double l = state.l_bar();
  return l * l + 2.0 * l * m.m1 + m.m2;
}

double mean_theta(const State& state) { return theta_moments(state, pair_sums(state)).mean; }

double mean_theta_sq(const State& state) {
  return theta_moments(state, pair_sums(state)).mean_sq;
}

double mean_theta_sq_symmetric_window(const State& state) {
  const auto ps = pair_sums(state);
  const double phi = state.theta_bar() - kPi;
  double sum = 0.0;
  for (std::size_t d = ps.s.size(); d-- > 1;) {
    const double dd = static_cast<double>(d);
    sum += std::cos(dd * phi) * ps.s[d] / (dd * dd);
  }
  return 4.0 * sum + kPi * kPi / 3.0;
}

double delta_theta(const State& state) {
  const auto t = theta_moments(state, pair_sums(state));
  return sq_root_clamped(t.mean_sq - t.mean * t.mean);
}

std::complex<double> theta_L_inner(const State& state) {
  return theta_L_inner(state, pair_sums(state), mean_L(state));
}

std::complex<double> cross_correlation(const State& state) {
  const auto ps = pair_sums(state);
  const double ml = mean_L(state);
  const auto inner = theta_L_inner(state, ps, ml);
  if (symmetric_origin(state)) check_boundary_identity(state, inner);
  return inner - theta_moments(state, ps).mean * ml;
}

MomentReport uncertainty_report(const State& state) {
  const auto ps = pair_sums(state);
  const auto om = offset_moments(state);
  const auto tm = theta_moments(state, ps);

  MomentReport r;
  r.mean_theta = tm.mean;
  r.mean_theta_sq = tm.mean_sq;
  r.mean_L = state.l_bar() + om.m1;
  r.mean_L_sq = state.l_bar() * state.l_bar() + 2.0 * state.l_bar() * om.m1 + om.m2;
  r.delta_theta = sq_root_clamped(tm.mean_sq - tm.mean * tm.mean);
  r.delta_L = std::sqrt(om.var);
  r.product = r.delta_theta * r.delta_L;
  r.theta_L_inner = theta_L_inner(state, ps, r.mean_L);
  if (symmetric_origin(state)) check_boundary_identity(state, r.theta_L_inner);
  r.cross_corr = r.theta_L_inner - r.mean_theta * r.mean_L;
  r.psi_at_pi_sq = std::norm(psi(state, state.theta0() + 2.0 * kPi));
  r.kraus_bound = std::abs(1.0 - 2.0 * kPi * r.psi_at_pi_sq) / 2.0;

  double total = 0.0;
  for (double a : state.amplitudes()) total += a * a;
  r.norm_residual = std::abs(total + state.tail_mass_bound() - 1.0);

  const double variance_product = r.delta_theta * r.delta_theta * r.delta_L * r.delta_L;
  if (variance_product < std::norm(r.cross_corr) - kInequalitySlack) {
    throw UncertaintyViolation("Cauchy-Schwarz violated: (dtheta dL)^2 = " +
                               std::to_string(variance_product) + " < |cross|^2 = " +
                               std::to_string(std::norm(r.cross_corr)));
  }
  if (r.product < r.kraus_bound - kInequalitySlack) {
    throw UncertaintyViolation("Kraus bound violated: dtheta dL = " + std::to_string(r.product) +
                               " < " + std::to_string(r.kraus_bound));
  }
  return r;
}

HalfIntegerGaps half_integer_gaps(const State& state) {
  const double l = std::floor(state.l_bar());
  if (state.l_bar() - l != 0.5 || !symmetric_origin(state)) {
    throw std::invalid_argument(
        "half_integer_gaps: needs half-integer lbar, theta_bar = 0, theta0 = -pi");
  }
  const auto a = state.amplitudes();
  const auto n0 = state.n_min();
  const auto lo = static_cast<std::int64_t>(l);
  auto central = [&](std::int64_t n) { return n == lo || n == lo + 1; };

  // (pi^2/3 - 2) - dtheta^2 = -2 SUM_{m,n} K(m - n) a(m) a(n), K(0) = 1,
  // K(d) = (-1)^d / d^2; the {l, l+1} block sums to (a_l - a_{l+1})^2 = 0.
  // <theta> vanishes identically for theta_bar = 0.
  double quad = 0.0;
  double l_gap = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const std::int64_t m = n0 + static_cast<std::int64_t>(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::int64_t n = n0 + static_cast<std::int64_t>(j);
      if (central(m) && central(n)) continue;
      const std::int64_t d = m - n;
      const double k = d == 0 ? 1.0 : ((d % 2 == 0) ? 1.0 : -1.0) / static_cast<double>(d * d);
      quad += k * a[i] * a[j];
    }
    if (!central(m)) {
      const double off = static_cast<double>(m) - state.l_bar();
      l_gap += (off * off - 0.25) * a[i] * a[i];
    }
  }
  return {-2.0 * quad, l_gap};
}

}  // namespace thetastate
