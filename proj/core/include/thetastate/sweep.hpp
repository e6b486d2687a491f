#pragma once

// Lambda sweeps, figure tables, Delta-theta inversion and CSV output.

#include <functional>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetastate/moment_report.hpp"

namespace thetastate {

struct SweepRecord {
  double lambda = 0.0;
  double delta_theta = 0.0;
  double delta_L = 0.0;
  double product = 0.0;
  double mean_L = 0.0;
  double kraus_bound = 0.0;
  double psi_at_pi_sq = 0.0;
  bool non_monotone = false;  // delta_theta did not decrease from the previous row
};

SweepRecord make_record(double lambda, const MomentReport& report);

struct GridSpec {
  double lambda_min = 0.02;
  double lambda_max = 50.0;
  int points = 200;
  bool log_spacing = true;

  /// Throws std::invalid_argument unless 0 < lambda_min < lambda_max, points >= 2.
  void validate() const;
};

std::vector<double> lambda_grid(const GridSpec& grid);

struct SweepOptions {
  double l_bar = 0.0;
  double theta_bar = 0.0;
  double theta0 = -std::numbers::pi;
  GridSpec grid;
};

/// One record per grid lambda, ascending.
std::vector<SweepRecord> sweep(const SweepOptions& options);

struct CsvTable {
  std::vector<std::string> comments;  // written as "# ..." lines
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double value);

/// UTF-8, LF line endings.
void write_csv(std::ostream& out, const CsvTable& table);

CsvTable sweep_table(const SweepOptions& options, const std::vector<SweepRecord>& records);

enum class Figure { Fig1, Fig2 };

struct FigureOptions {
  Figure which = Figure::Fig1;
  GridSpec grid;
  double fig1_offset_lbar = 0.45;
  std::vector<double> fig2_lbars{1.45, 1.5, 1.55};
};

/// Fig1 columns per lambda: full state at lbar = 0 (dtheta, product), the
/// renormalized n = 0 state (dtheta, product), the Kraus equality value of
/// the full state, and the full state at the offset lbar (dtheta, product).
/// Fig2 columns per lambda and per lbar: dtheta, <L>, dL.
CsvTable figure_data(const FigureOptions& options);

struct LambdaBracket {
  double lo = 1e-3;
  double hi = 1e4;
};

/// Target outside the attainable Delta-theta range of the bracket.
class DthetaRangeError : public std::out_of_range {
 public:
  DthetaRangeError(double target, double min, double max);
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  double min_;
  double max_;
};

class NonMonotoneBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInversionTol = 1e-10;

/// Bisection on log lambda of a non-increasing map lambda -> f(lambda). The
/// map is sampled across the bracket first; any increase throws
/// NonMonotoneBracket.
double invert_decreasing(const std::function<double(double)>& f, double target,
                         const LambdaBracket& bracket, double tol = kInversionTol);

/// lambda with |dtheta(lambda) - target| <= 1e-10 for the full state.
double find_lambda_for_dtheta(double target, double l_bar, double theta_bar,
                              const LambdaBracket& bracket = {});

/// Same for the renormalized n = 0 comparison state.
double find_padgett_lambda_for_dtheta(double target, double l_bar,
                                      const LambdaBracket& bracket = {1e-4, 1e3});

}  // namespace thetastate
