// thetastate: evaluate the periodic Gaussian angle state, its moments, sweeps
// and figure tables, and run the invariant suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thetastate/moments.hpp"
#include "thetastate/state_model.hpp"
#include "thetastate/sweep.hpp"
#include "thetastate/verify.hpp"

namespace {

using namespace thetastate;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  double lambda = 0.0;
  double l_bar = 0.0;
  double theta_bar = 0.0;
  double theta0 = -std::numbers::pi;
  std::string out;
};

struct GridFlags {
  double lambda_min = 0.02;
  double lambda_max = 50.0;
  int points = 200;
  bool linear = false;

  GridSpec spec() const { return {lambda_min, lambda_max, points, !linear}; }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::invalid_argument("cannot open output file: " + path);
    }
    stream().imbue(std::locale::classic());
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

StateParams params_of(const Common& c) { return {c.lambda, c.l_bar, c.theta_bar, c.theta0}; }

std::string param_comment(const StateParams& p) {
  return "lambda=" + format_double(p.lambda) + " lbar=" + format_double(p.l_bar) +
         " thetabar=" + format_double(p.theta_bar) + " theta0=" + format_double(p.theta0);
}

void add_state_flags(CLI::App* cmd, Common& c, bool need_lambda) {
  auto* opt = cmd->add_option("--lambda", c.lambda, "Width parameter lambda > 0")
                  ->check(CLI::PositiveNumber);
  if (need_lambda) opt->required();
  cmd->add_option("--lbar", c.l_bar, "Parameter lbar (default 0)");
  cmd->add_option("--thetabar", c.theta_bar, "Phase offset theta_bar (default 0)");
  cmd->add_option("--theta0", c.theta0, "Window start theta0 (default -pi)");
  cmd->add_option("--out", c.out, "Output path (default stdout)");
}

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--lambda-min", g.lambda_min, "Smallest lambda")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda-max", g.lambda_max, "Largest lambda")->check(CLI::PositiveNumber);
  cmd->add_option("--points", g.points, "Number of grid points (>= 2)");
  cmd->add_flag("--linear", g.linear, "Linear instead of logarithmic spacing");
}

int run_eval(const Common& c, std::optional<double> theta, int points) {
  const State state(params_of(c));
  CsvTable t;
  t.comments.push_back("eval " + param_comment(state.params()));
  t.header = {"theta", "re", "im", "abs_sq"};
  auto row = [&](double th) {
    const auto v = psi(state, th);
    t.rows.push_back({th, v.real(), v.imag(), std::norm(v)});
  };
  if (theta) {
    row(*theta);
  } else {
    if (points < 2) throw std::invalid_argument("eval: --points must be >= 2");
    for (int k = 0; k < points; ++k) row(c.theta0 + 2.0 * std::numbers::pi * k / (points - 1));
  }
  Output out(c.out);
  write_csv(out.stream(), t);
  return 0;
}

int run_moments(const Common& c) {
  const State state(params_of(c));
  const auto r = uncertainty_report(state);
  CsvTable t;
  t.comments.push_back("moments " + param_comment(state.params()));
  t.header = {"lambda",  "lbar",        "thetabar",     "theta0",        "mean_theta",
              "mean_theta_sq", "mean_L", "mean_L_sq",   "delta_theta",   "delta_L",
              "product", "cross_re",    "cross_im",     "kraus_bound",   "psi_at_pi_sq",
              "norm_residual"};
  t.rows.push_back({c.lambda, c.l_bar, c.theta_bar, c.theta0, r.mean_theta, r.mean_theta_sq,
                    r.mean_L, r.mean_L_sq, r.delta_theta, r.delta_L, r.product,
                    r.cross_corr.real(), r.cross_corr.imag(), r.kraus_bound, r.psi_at_pi_sq,
                    r.norm_residual});
  Output out(c.out);
  write_csv(out.stream(), t);
  return 0;
}

int run_pdist(const Common& c) {
  const State state(params_of(c));
  const auto d = prob_dist(state);
  CsvTable t;
  t.comments.push_back("pdist " + param_comment(state.params()));
  t.comments.push_back("tail_mass_bound=" + format_double(d.tail_mass_bound));
  t.header = {"l", "p"};
  for (auto l = d.l_min; l <= d.l_max; ++l) t.rows.push_back({static_cast<double>(l), d.at(l)});
  Output out(c.out);
  write_csv(out.stream(), t);
  return 0;
}

int run_sweep(const Common& c, const GridFlags& g) {
  SweepOptions o;
  o.l_bar = c.l_bar;
  o.theta_bar = c.theta_bar;
  o.theta0 = c.theta0;
  o.grid = g.spec();
  const auto records = sweep(o);
  Output out(c.out);
  write_csv(out.stream(), sweep_table(o, records));
  return 0;
}

int run_figure(const std::string& which, const GridFlags& g, double offset,
               const std::vector<double>& fig2_lbars, const std::string& path) {
  FigureOptions o;
  o.which = which == "fig1" ? Figure::Fig1 : Figure::Fig2;
  o.grid = g.spec();
  o.fig1_offset_lbar = offset;
  if (!fig2_lbars.empty()) o.fig2_lbars = fig2_lbars;
  const auto table = figure_data(o);
  Output out(path);
  write_csv(out.stream(), table);
  return 0;
}

int run_invert(const Common& c, double target) {
  const double lambda = find_lambda_for_dtheta(target, c.l_bar, c.theta_bar);
  const State state({lambda, c.l_bar, c.theta_bar, c.theta0});
  CsvTable t;
  t.comments.push_back("invert target=" + format_double(target) + " lbar=" +
                       format_double(c.l_bar) + " thetabar=" + format_double(c.theta_bar));
  t.header = {"target", "lambda", "delta_theta"};
  t.rows.push_back({target, lambda, delta_theta(state)});
  Output out(c.out);
  write_csv(out.stream(), t);
  return 0;
}

int run_verify(const std::string& path, bool flip) {
  Output out(path);
  auto& os = out.stream();
  VerifyOptions o;
  o.flip_cross_sign = flip;
  o.on_result = [&os](const CheckResult& r) {
    os << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n" << std::flush;
  };
  const auto results = run_verification(o);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  os << (failed == 0 ? "verify: all " + std::to_string(results.size()) + " checks passed\n"
                     : "verify: " + std::to_string(failed) + " of " +
                           std::to_string(results.size()) + " checks failed\n");
  return failed == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic Gaussian angle / angular-momentum state: evaluation and verification"};
  app.require_subcommand(1);

  Common eval_c, mom_c, pd_c, sw_c, inv_c;
  std::optional<double> eval_theta;
  int eval_points = 101;
  auto* eval = app.add_subcommand("eval", "Evaluate psi(theta) on a grid or at --theta");
  add_state_flags(eval, eval_c, true);
  eval->add_option("--theta", eval_theta, "Single angle to evaluate");
  eval->add_option("--points", eval_points, "Grid points across the window (default 101)");

  auto* moments = app.add_subcommand("moments", "Moment and uncertainty report");
  add_state_flags(moments, mom_c, true);

  auto* pdist = app.add_subcommand("pdist", "Angular-momentum distribution p(l)");
  add_state_flags(pdist, pd_c, true);

  GridFlags sw_g;
  auto* sw = app.add_subcommand("sweep", "Moments across a lambda grid");
  add_state_flags(sw, sw_c, false);
  add_grid_flags(sw, sw_g);

  GridFlags fig_g;
  std::string which = "fig1";
  std::string fig_out;
  double offset = 0.45;
  std::vector<double> fig2_lbars;
  auto* fig = app.add_subcommand("figure", "Figure tables as CSV");
  fig->add_option("--which", which, "fig1 or fig2")->check(CLI::IsMember({"fig1", "fig2"}));
  add_grid_flags(fig, fig_g);
  fig->add_option("--offset-lbar", offset, "Non-integer lbar curve in fig1 (default 0.45)");
  fig->add_option("--fig2-lbars", fig2_lbars, "lbar values for fig2 (default 1.45 1.5 1.55)");
  fig->add_option("--out", fig_out, "Output path (default stdout)");

  double target = 0.0;
  auto* inv = app.add_subcommand("invert", "Find lambda with a given delta_theta");
  add_state_flags(inv, inv_c, false);
  inv->add_option("--target", target, "Target delta_theta")->required();

  std::string verify_out;
  bool flip = false;
  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  ver->add_option("--out", verify_out, "Output path (default stdout)");
  ver->add_flag("--mutate-cross-sign", flip,
                "Self-test: negate Im (theta psi, L psi) so the identity check must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_c, eval_theta, eval_points);
    if (*moments) return run_moments(mom_c);
    if (*pdist) return run_pdist(pd_c);
    if (*sw) return run_sweep(sw_c, sw_g);
    if (*fig) return run_figure(which, fig_g, offset, fig2_lbars, fig_out);
    if (*inv) return run_invert(inv_c, target);
    if (*ver) return run_verify(verify_out, flip);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
