// Acceptance checks: one PASS/FAIL line per criterion.
//
// Usage: thetastate_acceptance <path-to-cli> [--expected-fail N]...
// Criteria listed with --expected-fail still print FAIL; the exit code is 0
// only if the set of failing criteria equals the expected set.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thetastate/asymptotics.hpp"
#include "thetastate/moments.hpp"
#include "thetastate/oracle.hpp"
#include "thetastate/state_model.hpp"
#include "thetastate/sweep.hpp"
#include "thetastate/verify.hpp"

using namespace thetastate;

namespace {

constexpr double kPi = std::numbers::pi;
const double kHalfLimitSq = kPi * kPi / 3.0 - 2.0;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3e", v);
  return buf.data();
}

std::vector<double> log_grid(double lo, double hi, int points) {
  return lambda_grid({lo, hi, points, true});
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  CliRun r;
  FILE* pipe = popen((cli + " " + args + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome integer_mean() {
  double worst = 0.0;
  for (double l : {-2.0, 0.0, 3.0}) {
    for (double lambda : {0.05, 1.0, 20.0}) {
      worst = std::max(worst, std::abs(mean_L(State({lambda, l})) - l));
    }
  }
  return {worst <= 1e-12, "max |<L> - lbar| = " + sci(worst)};
}

Outcome half_integer_mean() {
  double worst = 0.0;
  for (double l : {0.5, 1.5, 7.5}) {
    for (double lambda : {0.02, kCrossoverLambda, 1.0, 20.0}) {
      worst = std::max(worst, std::abs(mean_L(State({lambda, l})) - l));
    }
  }
  return {worst <= 1e-12, "max |<L> - lbar| = " + sci(worst)};
}

Outcome half_integer_limits() {
  const auto r = uncertainty_report(State({0.02, 1.5}));
  const double dt = std::abs(r.delta_theta * r.delta_theta - kHalfLimitSq);
  const double dl = std::abs(r.delta_L - 0.5);
  double min_theta_gap = INFINITY;
  double min_L_gap = INFINITY;
  for (double lambda : lambda_grid(GridSpec{})) {
    const auto gaps = half_integer_gaps(State({lambda, 1.5}));
    min_theta_gap = std::min(min_theta_gap, gaps.theta_sq_gap);
    min_L_gap = std::min(min_L_gap, gaps.L_sq_gap);
  }
  return {dt <= 1e-4 && dl <= 1e-4 && min_theta_gap > 0.0 && min_L_gap > 0.0,
          "|dtheta^2 - limit| = " + sci(dt) + ", |dL - 1/2| = " + sci(dl) +
              ", min gaps on grid: theta^2 " + sci(min_theta_gap) + ", L^2 " + sci(min_L_gap)};
}

Outcome integer_small_lambda() {
  const auto r = uncertainty_report(State({0.02, 0.0}));
  const double dt = std::abs(r.delta_theta - kPi / std::sqrt(3.0));
  return {dt <= 1e-3 && r.delta_L <= 1e-4, "|dtheta - pi/sqrt3| = " + sci(dt) + ", dL = " + sci(r.delta_L)};
}

Outcome large_lambda() {
  const auto r = uncertainty_report(State({20.0, 0.0}));
  const double dp = std::abs(r.product - 0.5);
  const double dt = std::abs(r.delta_theta - 1.0 / std::sqrt(40.0));
  return {dp <= 2e-3 && dt <= 1e-4, "|product - 1/2| = " + sci(dp) + ", |dtheta - 1/sqrt40| = " + sci(dt)};
}

Outcome boundary_identity() {
  double worst_re = 0.0;
  double worst_im = 0.0;
  for (double lambda : {0.05, kCrossoverLambda, 1.0, 5.0}) {
    for (double l : {0.0, 0.45, 0.5, 2.0}) {
      const State s({lambda, l});
      const auto inner = theta_L_inner(s);
      const double edge = std::norm(psi(s, kPi));
      worst_re = std::max(worst_re, std::abs(inner.real()));
      worst_im = std::max(worst_im, std::abs(inner.imag() - (1.0 - 2.0 * kPi * edge) / 2.0));
    }
  }
  return {worst_re <= 1e-12 && worst_im <= 1e-10,
          "max |Re| = " + sci(worst_re) + ", max |Im - (1 - 2 pi |psi(pi)|^2)/2| = " + sci(worst_im)};
}

Outcome inequalities() {
  double min_cs = INFINITY;
  double min_kraus = INFINITY;
  int points = 0;
  for (double lambda : standard_lambdas()) {
    for (double l : standard_lbars()) {
      const auto r = uncertainty_report(State({lambda, l}));
      min_cs = std::min(min_cs, r.product - std::abs(r.cross_corr.imag()));
      min_kraus = std::min(min_kraus, r.product - r.kraus_bound);
      ++points;
    }
  }
  return {points == 49 && min_cs >= -1e-10 && min_kraus >= -1e-10,
          std::to_string(points) + " points, min slack: Cauchy-Schwarz " + sci(min_cs) + ", Kraus " +
              sci(min_kraus)};
}

Outcome representation_equivalence() {
  double worst = 0.0;
  for (double lambda : standard_lambdas()) {
    for (double l : standard_lbars()) {
      for (double tb : {0.0, 0.3}) {
        const State s({lambda, l, tb});
        for (int k = 0; k <= 64; ++k) {
          const double t = -kPi + 2 * kPi * k / 64;
          worst = std::max(worst, std::abs(psi(s, t, Representation::LatticeTheta) -
                                           psi(s, t, Representation::FourierTheta)));
        }
      }
    }
  }
  return {worst <= 1e-12, "max |psi_lattice - psi_fourier| = " + sci(worst)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (double lambda : standard_lambdas()) {
    for (double l : standard_lbars()) {
      for (double tb : {0.0, 0.3}) worst = std::max(worst, compare(State({lambda, l, tb})).max_deviation());
    }
  }
  return {worst <= 1e-9, "max deviation = " + sci(worst)};
}

Outcome two_level_model() {
  double worst_mean = 0.0;
  double worst_var = 0.0;
  for (double eps : {0.25, 0.45, 0.5, 0.55, 0.75}) {
    for (double lambda : log_grid(1e-3, 0.1, 40)) {
      const double l_bar = 1.0 + eps;
      const auto model = small_lambda_L_moments(BranchSpec::from_lbar(l_bar), lambda);
      const auto exact = uncertainty_report(State({lambda, l_bar}));
      worst_mean = std::max(worst_mean, std::abs(exact.mean_L - model.mean_L));
      worst_var = std::max(worst_var, std::abs(exact.delta_L * exact.delta_L - model.var_L));
    }
  }
  return {worst_mean <= 1e-6 && worst_var <= 1e-5,
          "max |d mean_L| = " + sci(worst_mean) + ", max |d var_L| = " + sci(worst_var)};
}

Outcome fig1_dominance() {
  double worst = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double target = 0.3 + 1.2 * i / 19.0;
    const double full = uncertainty_report(State({find_lambda_for_dtheta(target, 0.0, 0.0), 0.0})).product;
    const double padgett = padgett_state_moments(find_padgett_lambda_for_dtheta(target, 0.0), 0.0).product;
    worst = std::max(worst, full - padgett);
  }
  return {worst <= 1e-9, "max (full - n=0 state) product = " + sci(worst)};
}

Outcome branching() {
  double best = 0.0;
  double best_at = 0.0;
  double worst_exact = 0.0;
  for (double lambda : log_grid(0.02, 1.0, 400)) {
    const double split = std::abs(mean_L(State({lambda, 1.5 + 1e-6})) - mean_L(State({lambda, 1.5 - 1e-6})));
    if (split > best) {
      best = split;
      best_at = lambda;
    }
    worst_exact = std::max(worst_exact, std::abs(mean_L(State({lambda, 1.5})) - 1.5));
  }
  // where the split does reach 0.9
  double reach = NAN;
  for (double lambda : log_grid(1e-10, 0.02, 400)) {
    if (std::abs(mean_L(State({lambda, 1.5 + 1e-6})) - mean_L(State({lambda, 1.5 - 1e-6}))) >= 0.9) {
      reach = lambda;
    }
  }
  return {best >= 0.9 && worst_exact <= 1e-12,
          "max split on [0.02, 1] = " + sci(best) + " at lambda " + sci(best_at) +
              "; split >= 0.9 only for lambda <= " + sci(reach) + "; max |<L>(1.5) - 1.5| = " + sci(worst_exact)};
}

Outcome cli_determinism(const std::string& cli) {
  const auto a = run_cli(cli, "figure --which fig1");
  const auto b = run_cli(cli, "figure --which fig1");
  return {a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out,
          "exit codes " + std::to_string(a.code) + "/" + std::to_string(b.code) + ", " +
              std::to_string(a.out.size()) + " bytes, identical: " + (a.out == b.out ? "yes" : "no")};
}

Outcome verify_suite(const std::string& cli) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_cli(cli, "verify");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {r.code == 0 && seconds <= 60.0,
          "exit " + std::to_string(r.code) + " in " + std::to_string(seconds) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <thetastate-cli> [--expected-fail N]...\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::set<int> expected;
  for (int i = 2; i < argc; ++i) {
    if (std::string(argv[i]) == "--expected-fail" && i + 1 < argc) {
      expected.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "unknown argument: " << argv[i] << "\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact integer mean", integer_mean},
      {"exact half-integer mean", half_integer_mean},
      {"half-integer critical limits and strict bounds", half_integer_limits},
      {"integer small-lambda limit", integer_small_lambda},
      {"large-lambda minimal dispersion", large_lambda},
      {"(theta psi, L psi) boundary identity", boundary_identity},
      {"uncertainty inequalities on the standard grid", inequalities},
      {"lattice vs Fourier representation", representation_equivalence},
      {"series vs quadrature/lattice oracle", oracle_equivalence},
      {"two-level small-lambda model", two_level_model},
      {"full state below n=0 state at matched dtheta", fig1_dominance},
      {"branching sensitivity at lbar = 1.5 +- 1e-6", branching},
      {"CLI fig1 determinism", [&] { return cli_determinism(cli); }},
      {"verify suite exit 0 within 60 s", [&] { return verify_suite(cli); }},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) failed.insert(id);
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << "  [" << o.detail
              << "]" << (!o.passed && expected.count(id) ? "  (expected)" : "") << "\n";
  }
  std::cout << "acceptance: " << criteria.size() - failed.size() << " of " << criteria.size() << " passed";
  if (!expected.empty()) {
    std::cout << "; expected failures:";
    for (int id : expected) std::cout << " " << id;
  }
  std::cout << "\n";
  return failed == expected ? 0 : 1;
}
