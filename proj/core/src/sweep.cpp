#include "thetastate/sweep.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "thetastate/moments.hpp"
#include "thetastate/state_model.hpp"

namespace thetastate {

SweepRecord make_record(double lambda, const MomentReport& report) {
  SweepRecord r;
  r.lambda = lambda;
  r.delta_theta = report.delta_theta;
  r.delta_L = report.delta_L;
  r.product = report.product;
  r.mean_L = report.mean_L;
  r.kraus_bound = report.kraus_bound;
  r.psi_at_pi_sq = report.psi_at_pi_sq;
  return r;
}

void GridSpec::validate() const {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || !std::isfinite(lambda_max)) {
    throw std::invalid_argument("grid: need 0 < lambda_min < lambda_max");
  }
  if (points < 2) throw std::invalid_argument("grid: need at least 2 points");
}

std::vector<double> lambda_grid(const GridSpec& grid) {
  grid.validate();
  std::vector<double> out(static_cast<std::size_t>(grid.points));
  const double last = grid.points - 1;
  for (int i = 0; i < grid.points; ++i) {
    const double t = i / last;
    out[static_cast<std::size_t>(i)] =
        grid.log_spacing
            ? std::exp(std::log(grid.lambda_min) + t * (std::log(grid.lambda_max) - std::log(grid.lambda_min)))
            : grid.lambda_min + t * (grid.lambda_max - grid.lambda_min);
  }
  out.front() = grid.lambda_min;
  out.back() = grid.lambda_max;
  return out;
}

std::vector<SweepRecord> sweep(const SweepOptions& options) {
  const auto lambdas = lambda_grid(options.grid);
  std::vector<SweepRecord> records;
  records.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const State state({lambda, options.l_bar, options.theta_bar, options.theta0});
    records.push_back(make_record(lambda, uncertainty_report(state)));
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    records[i].non_monotone = !(records[i].delta_theta < records[i - 1].delta_theta);
  }
  return records;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
}

namespace {

std::string grid_comment(const GridSpec& g) {
  return "grid lambda_min=" + format_double(g.lambda_min) +
         " lambda_max=" + format_double(g.lambda_max) + " points=" + std::to_string(g.points) +
         " spacing=" + (g.log_spacing ? "log" : "linear");
}

}  // namespace

CsvTable sweep_table(const SweepOptions& options, const std::vector<SweepRecord>& records) {
  CsvTable t;
  t.comments.push_back("sweep lbar=" + format_double(options.l_bar) +
                       " thetabar=" + format_double(options.theta_bar) +
                       " theta0=" + format_double(options.theta0));
  t.comments.push_back(grid_comment(options.grid));
  t.header = {"lambda", "delta_theta", "delta_L", "product", "mean_L",
              "kraus_bound", "psi_at_pi_sq", "non_monotone"};
  for (const auto& r : records) {
    t.rows.push_back({r.lambda, r.delta_theta, r.delta_L, r.product, r.mean_L, r.kraus_bound,
                      r.psi_at_pi_sq, r.non_monotone ? 1.0 : 0.0});
  }
  return t;
}

CsvTable figure_data(const FigureOptions& options) {
  const auto lambdas = lambda_grid(options.grid);
  CsvTable t;
  if (options.which == Figure::Fig1) {
    t.comments.push_back("fig1 thetabar=0 theta0=-pi offset_lbar=" +
                         format_double(options.fig1_offset_lbar));
    t.comments.push_back(grid_comment(options.grid));
    t.header = {"lambda",          "full_delta_theta", "full_product",   "padgett_delta_theta",
                "padgett_product", "kraus_equality",   "offset_delta_theta", "offset_product"};
    for (double lambda : lambdas) {
      const auto full = uncertainty_report(State({lambda, 0.0}));
      const auto padgett = padgett_state_moments(lambda, 0.0);
      const auto offset = uncertainty_report(State({lambda, options.fig1_offset_lbar}));
      t.rows.push_back({lambda, full.delta_theta, full.product, padgett.delta_theta,
                        padgett.product, full.kraus_bound, offset.delta_theta, offset.product});
    }
  } else {
    if (options.fig2_lbars.empty()) throw std::invalid_argument("fig2: need at least one lbar");
    std::string lbars;
    for (double l : options.fig2_lbars) lbars += (lbars.empty() ? "" : " ") + format_double(l);
    t.comments.push_back("fig2 thetabar=0 theta0=-pi lbars=" + lbars);
    t.comments.push_back(grid_comment(options.grid));
    t.header = {"lambda"};
    for (double l : options.fig2_lbars) {
      const std::string tag = format_double(l);
      t.header.push_back("delta_theta_lbar" + tag);
      t.header.push_back("mean_L_lbar" + tag);
      t.header.push_back("delta_L_lbar" + tag);
    }
    for (double lambda : lambdas) {
      std::vector<double> row{lambda};
      for (double l : options.fig2_lbars) {
        const auto r = uncertainty_report(State({lambda, l}));
        row.insert(row.end(), {r.delta_theta, r.mean_L, r.delta_L});
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

DthetaRangeError::DthetaRangeError(double target, double min, double max)
    : std::out_of_range("target delta_theta " + format_double(target) +
                        " outside attainable range [" + format_double(min) + ", " +
                        format_double(max) + "]"),
      min_(min),
      max_(max) {}

double invert_decreasing(const std::function<double(double)>& f, double target,
                         const LambdaBracket& bracket, double tol) {
  if (!(bracket.lo > 0.0 && bracket.hi > bracket.lo)) {
    throw std::invalid_argument("invert: need 0 < lo < hi");
  }
  constexpr int kSamples = 48;
  constexpr double kFlat = 1e-13;
  const double log_lo = std::log(bracket.lo);
  const double log_hi = std::log(bracket.hi);
  std::vector<double> logs(kSamples);
  std::vector<double> values(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    logs[i] = log_lo + (log_hi - log_lo) * i / (kSamples - 1);
    values[i] = f(std::exp(logs[i]));
    if (i > 0 && values[i] > values[i - 1] + kFlat) {
      throw NonMonotoneBracket("invert: map increases between lambda=" +
                               format_double(std::exp(logs[i - 1])) + " and " +
                               format_double(std::exp(logs[i])));
    }
  }
  if (!(target >= values.back() && target <= values.front())) {
    throw DthetaRangeError(target, values.back(), values.front());
  }

  // narrow to the sample interval holding the target
  int i = 0;
  while (i + 1 < kSamples - 1 && values[i + 1] >= target) ++i;
  double a = logs[i];
  double b = logs[i + 1];
  if (std::abs(values[i] - target) <= tol) return std::exp(a);
  if (std::abs(values[i + 1] - target) <= tol) return std::exp(b);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    const double v = f(std::exp(mid));
    if (std::abs(v - target) <= tol) return std::exp(mid);
    if (v > target) a = mid; else b = mid;
  }
  throw NonMonotoneBracket("invert: bisection did not reach tolerance");
}

double find_lambda_for_dtheta(double target, double l_bar, double theta_bar,
                              const LambdaBracket& bracket) {
  return invert_decreasing(
      [&](double lambda) { return delta_theta(State({lambda, l_bar, theta_bar})); },
      target, bracket);
}

double find_padgett_lambda_for_dtheta(double target, double l_bar, const LambdaBracket& bracket) {
  return invert_decreasing(
      [&](double lambda) { return padgett_state_moments(lambda, l_bar).delta_theta; }, target,
      bracket);
}

}  // namespace thetastate
