#include "thetastate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>

#include "thetastate/asymptotics.hpp"
#include "thetastate/moments.hpp"
#include "thetastate/oracle.hpp"
#include "thetastate/state_model.hpp"
#include "thetastate/sweep.hpp"
#include "thetastate/theta_engine.hpp"

namespace thetastate {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// max |deviation| against a tolerance
CheckResult bounded(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol, "max deviation " + sci(worst) + " (tol " + sci(tol) + ")"};
}

std::vector<std::pair<double, double>> standard_grid() {
  std::vector<std::pair<double, double>> g;
  for (double lambda : standard_lambdas()) {
    for (double l : standard_lbars()) g.emplace_back(lambda, l);
  }
  return g;
}

// Five-point one-sided derivative; direction +1 looks right, -1 looks left.
template <typename F>
std::complex<double> one_sided_derivative(F&& f, double x, double h, int direction) {
  const double s = direction * h;
  return static_cast<double>(direction) *
         (-25.0 * f(x) + 48.0 * f(x + s) - 36.0 * f(x + 2 * s) + 16.0 * f(x + 3 * s) -
          3.0 * f(x + 4 * s)) /
         (12.0 * h);
}

CheckResult theta3_symmetries() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> im(-0.5, 0.5);
  std::uniform_real_distribution<double> nome(0.0, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const std::complex<double> z{re(rng), i % 4 == 0 ? 0.0 : im(rng)};
    const double q = nome(rng);
    const auto v = theta3(z, q);
    // rounding enters at the scale of the largest term
    const double scale = std::max(1.0, theta3(std::complex<double>(0.0, std::abs(z.imag())), q).real());
    double dev = std::abs(theta3(z + kPi, q) - v) / scale;
    dev = std::max(dev, std::abs(theta3(-z, q) - v) / scale);
    if (z.imag() == 0.0) dev = std::max(dev, std::abs(v.imag()) / scale);
    worst = std::max(worst, dev);
  }
  return bounded("theta_engine: periodicity, evenness, reality", worst, 2.0 * kDefaultEps);
}

CheckResult representation_equivalence() {
  double worst = 0.0;
  std::vector<double> lambdas;
  for (int i = 0; i <= 16; ++i) lambdas.push_back(0.05 * std::pow(400.0, i / 16.0));
  lambdas.push_back(kCrossoverLambda);
  for (double lambda : lambdas) {
    for (double l : standard_lbars()) {
      const State s({lambda, l, 0.3});
      for (int k = 0; k <= 100; ++k) {
        const double t = -kPi + 2.0 * kPi * k / 100.0;
        worst = std::max(worst, std::abs(psi(s, t, Representation::LatticeTheta) -
                                         psi(s, t, Representation::FourierTheta)));
      }
    }
  }
  return bounded("state_model: lattice vs Fourier theta_3 forms", worst, 1e-12);
}

CheckResult distribution_mass() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const auto d = prob_dist(State({lambda, l}));
    double total = d.tail_mass_bound;
    for (double w : d.weights) total += w;
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return bounded("state_model: SUM p(l) + tail = 1", worst, 1e-12);
}

CheckResult quadrature_norm() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const State s({lambda, l, 0.4});
    worst = std::max(worst, std::abs(quad_inner(s, Weight::One, Operand::Psi) - 1.0));
  }
  return bounded("state_model: quadrature norm", worst, 1e-10);
}

CheckResult boundary_smoothness() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const State s({lambda, l});
    auto f = [&](double t) { return lattice_psi(s, t); };
    worst = std::max(worst, std::abs(f(-kPi) - f(kPi)));
    const auto left = one_sided_derivative(f, kPi, 1e-3, -1);
    const auto right = one_sided_derivative(f, -kPi, 1e-3, +1);
    worst = std::max(worst, std::abs(left - right));
  }
  return bounded("state_model: psi and psi' match across the window edge", worst, 1e-10);
}

CheckResult half_integer_node() {
  double worst = 0.0;
  for (double lambda : standard_lambdas()) {
    for (double l : {0.5, 1.5, -0.5, 7.5}) {
      for (double tb : {0.0, 0.7}) {
        const State s({lambda, l, tb});
        worst = std::max(worst, std::abs(psi(s, tb + kPi)));
      }
    }
  }
  return bounded("state_model: half-integer node at theta_bar + pi", worst, 1e-13);
}

CheckResult phase_covariance() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const State a({lambda, l, 0.0});
    const State b({lambda, l, 1.1});
    for (int k = 0; k <= 20; ++k) {
      const double t = -kPi + 2.0 * kPi * k / 20.0;
      worst = std::max(worst, std::abs(std::abs(psi(a, t)) - std::abs(psi(b, t + 1.1))));
    }
  }
  return bounded("state_model: phase covariance in theta_bar", worst, 1e-12);
}

CheckResult oracle_agreement() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    for (double tb : {0.0, 0.3}) {
      worst = std::max(worst, compare(State({lambda, l, tb})).max_deviation());
    }
  }
  return bounded("moments/oracle: series vs quadrature and lattice sum", worst, 1e-9);
}

CheckResult theta_bar_independence() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const State base({lambda, l, 0.0});
    for (double tb : {0.7, kPi}) {
      const State s({lambda, l, tb});
      worst = std::max(worst, std::abs(mean_L(s) - mean_L(base)));
      worst = std::max(worst, std::abs(mean_L_sq(s) - mean_L_sq(base)));
    }
  }
  return bounded("moments: <L>, <L^2> independent of theta_bar", worst, 1e-12);
}

CheckResult integer_shift() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const auto a = uncertainty_report(State({lambda, l}));
    const auto b = uncertainty_report(State({lambda, l + 1.0}));
    worst = std::max({worst, std::abs(b.mean_L - a.mean_L - 1.0), std::abs(b.delta_L - a.delta_L),
                      std::abs(b.delta_theta - a.delta_theta)});
  }
  return bounded("moments: lbar -> lbar + 1 covariance", worst, 1e-12);
}

CheckResult epsilon_reflection() {
  double worst = 0.0;
  for (double lambda : standard_lambdas()) {
    for (double eps : {0.1, 0.25, 0.45}) {
      const auto a = uncertainty_report(State({lambda, 1.0 + eps}));
      const auto b = uncertainty_report(State({lambda, 2.0 - eps}));
      worst = std::max(worst, std::abs(a.delta_L - b.delta_L));
    }
  }
  return bounded("moments: dL(l + eps) = dL(l + 1 - eps)", worst, 1e-12);
}

CheckResult inequalities() {
  double worst_slack = 1.0;
  std::string failure;
  for (auto [lambda, l] : standard_grid()) {
    try {
      const auto r = uncertainty_report(State({lambda, l}));
      const double cs = r.delta_theta * r.delta_theta * r.delta_L * r.delta_L - std::norm(r.cross_corr);
      worst_slack = std::min({worst_slack, cs, r.product - r.kraus_bound});
    } catch (const std::exception& e) {
      failure = e.what();
    }
  }
  CheckResult c{"moments: Cauchy-Schwarz and Kraus bound", failure.empty() && worst_slack >= -kInequalitySlack,
                "min slack " + sci(worst_slack)};
  if (!failure.empty()) c.detail += "; " + failure;
  return c;
}

CheckResult window_forms() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    for (double tb : {0.0, 0.6, -2.0}) {
      const State s({lambda, l, tb});
      worst = std::max(worst, std::abs(mean_theta_sq(s) - mean_theta_sq_symmetric_window(s)));
    }
  }
  return bounded("moments: general-window and [-pi, pi] forms of <theta^2>", worst, 1e-12);
}

CheckResult boundary_identity(bool flip) {
  bool ok = true;
  double worst = 0.0;
  for (double lambda : {0.05, kCrossoverLambda, 1.0, 5.0}) {
    for (double l : {0.0, 0.45, 0.5, 2.0}) {
      const State s({lambda, l});
      auto inner = theta_L_inner(s);
      if (flip) inner = std::conj(inner);
      const double edge = std::norm(psi(s, kPi));
      ok = ok && theta_L_identity_holds(inner, edge);
      worst = std::max({worst, std::abs(inner.real()),
                        std::abs(inner.imag() - 0.5 * (1.0 - 2.0 * kPi * edge))});
    }
  }
  return {"moments: (theta psi, L psi) = (i/2)(1 - 2 pi |psi(pi)|^2)", ok,
          "max deviation " + sci(worst)};
}

CheckResult fig1_dominance() {
  double worst = -1.0;
  for (int k = 0; k < 20; ++k) {
    const double target = 0.3 + 1.2 * k / 19.0;
    const double lf = find_lambda_for_dtheta(target, 0.0, 0.0);
    const double lp = find_padgett_lambda_for_dtheta(target, 0.0);
    const double full = uncertainty_report(State({lf, 0.0})).product;
    const double padgett = padgett_state_moments(lp, 0.0).product;
    worst = std::max(worst, full - padgett);
  }
  return {"moments: full-state product <= n = 0 state product at matched dtheta",
          worst <= 1e-9, "max (full - n=0) " + sci(worst)};
}

CheckResult small_lambda_model() {
  double worst_mean = 0.0;
  double worst_var = 0.0;
  for (double lambda : {0.02, 0.05, 0.1}) {
    for (double eps : {0.25, 0.45, 0.5, 0.55, 0.75}) {
      const auto r = uncertainty_report(State({lambda, 1.0 + eps}));
      const auto m = small_lambda_L_moments(BranchSpec::from_lbar(1.0 + eps), lambda);
      worst_mean = std::max(worst_mean, std::abs(r.mean_L - m.mean_L));
      worst_var = std::max(worst_var, std::abs(r.delta_L * r.delta_L - m.var_L));
    }
  }
  return {"asymptotics: two-level model vs exact series (lambda <= 0.1)",
          worst_mean <= 1e-6 && worst_var <= 1e-5,
          "mean " + sci(worst_mean) + ", var " + sci(worst_var)};
}

CheckResult large_lambda_model() {
  double worst_dt = 0.0;
  double worst_prod = 0.0;
  for (double lambda : {5.0, 10.0, 20.0, 50.0}) {
    for (double l : {0.0, 0.3, 1.5}) {
      const auto r = uncertainty_report(State({lambda, l}));
      const auto g = large_lambda_report(lambda, l, 0.0);
      worst_dt = std::max(worst_dt, std::abs(r.delta_theta - g.delta_theta));
      worst_prod = std::max(worst_prod, std::abs(r.product - g.product));
    }
  }
  return {"asymptotics: Gaussian model vs exact series (lambda >= 5)",
          worst_dt <= 1e-6 && worst_prod <= 1e-4,
          "dtheta " + sci(worst_dt) + ", product " + sci(worst_prod)};
}

CheckResult half_integer_limit() {
  const State s({0.02, 1.5});
  const double dev = std::abs(mean_theta_sq(s) - (kPi * kPi / 3.0 - 2.0));
  bool ok = dev <= 1e-4;
  // gap to the bound must be positive and shrink as lambda decreases
  double prev = std::numeric_limits<double>::infinity();
  const auto lambdas = lambda_grid({0.02, 50.0, 60, true});
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
    const double gap = half_integer_gaps(State({*it, 1.5})).theta_sq_gap;
    ok = ok && gap > 0.0 && gap < prev;
    prev = gap;
  }
  return {"asymptotics: dtheta^2 -> pi^2/3 - 2 from below at half-integer lbar", ok,
          "|<theta^2> - limit| at lambda=0.02: " + sci(dev) + ", smallest gap " + sci(prev)};
}

CheckResult branch_dichotomy() {
  double best = 0.0;
  double at = 0.0;
  for (double lambda : lambda_grid({1e-8, 1.0, 81, true})) {
    const double up = mean_L(State({lambda, 1.5 + 1e-6}));
    const double down = mean_L(State({lambda, 1.5 - 1e-6}));
    if (up - down > best) {
      best = up - down;
      at = lambda;
    }
  }
  return {"asymptotics: branches at lbar = 1.5 +- 1e-6 split by >= 0.9", best >= 0.9,
          "max split " + sci(best) + " at lambda " + sci(at)};
}

CheckResult quadrature_self_consistency() {
  double worst = 0.0;
  for (auto [lambda, l] : {std::pair{0.05, 0.45}, {1.0, 1.5}, {20.0, 0.0}}) {
    const State s({lambda, l, 0.3});
    const auto a = quad_moments(s);
    QuadratureSpec finer;
    finer.panels = 2 * a.panels;
    const auto b = quad_moments(s, finer);
    worst = std::max({worst, std::abs(a.norm - b.norm), std::abs(a.mean_theta - b.mean_theta),
                      std::abs(a.mean_theta_sq - b.mean_theta_sq), std::abs(a.mean_L_sq - b.mean_L_sq),
                      std::abs(a.theta_L_inner - b.theta_L_inner)});
  }
  return bounded("oracle: refinement beyond acceptance is stable", worst, 1e-12);
}

CheckResult parseval_mean_L() {
  double worst = 0.0;
  for (auto [lambda, l] : standard_grid()) {
    const State s({lambda, l});
    const auto d = prob_dist(s);
    double sum = 0.0;
    for (auto n = d.l_min; n <= d.l_max; ++n) sum += static_cast<double>(n) * d.at(n);
    worst = std::max(worst, std::abs(quad_inner(s, Weight::One, Operand::LPsi).real() - sum));
  }
  return bounded("oracle: <L> integral route vs SUM n p(n)", worst, 1e-9);
}

CheckResult l_psi_finite_difference() {
  double worst = 0.0;
  const double h = 1e-4;
  for (auto [lambda, l] : {std::pair{0.05, 0.45}, {1.0, 1.5}, {5.0, 0.0}}) {
    const State s({lambda, l, 0.2});
    for (int k = 1; k < 20; ++k) {
      const double t = -kPi + 2.0 * kPi * k / 20.0;
      const auto fd = std::complex<double>(0.0, -1.0) * (psi(s, t + h) - psi(s, t - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(l_psi(s, t) - fd));
    }
  }
  return bounded("oracle: spectral L psi vs finite difference", worst, 1e-6);
}

CheckResult sweep_records() {
  double worst = 0.0;
  double worst_slack = 1.0;
  for (double l : {0.0, 1.45, 1.5}) {
    SweepOptions o;
    o.l_bar = l;
    o.grid.points = 60;
    for (const auto& r : sweep(o)) {
      worst = std::max(worst, std::abs(r.product - r.delta_theta * r.delta_L));
      worst_slack = std::min(worst_slack, r.product - r.kraus_bound);
    }
  }
  return {"sweep: record invariants", worst <= 1e-12 && worst_slack >= -kInequalitySlack,
          "product recomputation " + sci(worst) + ", min Kraus slack " + sci(worst_slack)};
}

CheckResult figure_determinism() {
  FigureOptions o;
  o.grid.points = 40;
  std::ostringstream a;
  std::ostringstream b;
  const auto t1 = figure_data(o);
  write_csv(a, t1);
  write_csv(b, figure_data(o));
  bool kraus_ok = true;
  for (const auto& row : t1.rows) kraus_ok = kraus_ok && row[2] >= row[5] - kInequalitySlack;
  return {"sweep: fig1 CSV deterministic and product >= Kraus column",
          a.str() == b.str() && kraus_ok, std::to_string(t1.rows.size()) + " rows"};
}

CheckResult inversion_round_trip() {
  double worst = 0.0;
  for (auto [target, l] : {std::pair{1.0 / std::sqrt(40.0), 0.0}, {1.80, 0.0}, {1.0, 1.5}, {0.5, 0.45}}) {
    const double lambda = find_lambda_for_dtheta(target, l, 0.0);
    worst = std::max(worst, std::abs(delta_theta(State({lambda, l})) - target));
  }
  bool range_error = false;
  try {
    find_lambda_for_dtheta(1.5, 1.5, 0.0);
  } catch (const DthetaRangeError&) {
    range_error = true;
  }
  return {"sweep: dtheta inversion round trip and range check", worst <= kInversionTol && range_error,
          "max deviation " + sci(worst)};
}

}  // namespace

std::vector<double> standard_lambdas() { return {0.05, 0.1, 0.5, kCrossoverLambda, 1.0, 5.0, 20.0}; }

std::vector<double> standard_lbars() { return {0.0, 0.25, 0.45, 0.5, 0.55, 1.0, 1.5}; }

bool theta_L_identity_holds(std::complex<double> inner, double psi_edge_sq, double tol_re,
                            double tol_im) {
  return std::abs(inner.real()) <= tol_re &&
         std::abs(inner.imag() - 0.5 * (1.0 - 2.0 * kPi * psi_edge_sq)) <= tol_im;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const std::vector<std::function<CheckResult()>> checks = {
      theta3_symmetries,
      representation_equivalence,
      distribution_mass,
      quadrature_norm,
      boundary_smoothness,
      half_integer_node,
      phase_covariance,
      oracle_agreement,
      theta_bar_independence,
      integer_shift,
      epsilon_reflection,
      inequalities,
      window_forms,
      [&] { return boundary_identity(options.flip_cross_sign); },
      fig1_dominance,
      small_lambda_model,
      large_lambda_model,
      half_integer_limit,
      branch_dichotomy,
      quadrature_self_consistency,
      parseval_mean_L,
      l_psi_finite_difference,
      sweep_records,
      figure_determinism,
      inversion_round_trip,
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {"check " + std::to_string(results.size() + 1) + " threw", false, e.what()};
    }
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace thetastate
