#include "thetastate/theta_engine.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace thetastate {

namespace {

void validate(double q, double eps) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::invalid_argument("theta3: nome must satisfy 0 <= q < 1, got " +
                                std::to_string(q));
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("theta3: eps must be positive");
  }
}

void validate(const ThetaArgs& args) {
  if (args.log_nome != 0.0) {
    if (!(args.log_nome < 0.0)) {
      throw std::invalid_argument("theta3: log nome must be negative");
    }
    validate(0.0, args.eps);
  } else {
    validate(args.q, args.eps);
  }
}

// log of  |peak| * 2 q^(K^2) beta^K / (1 - q^(2K+1) beta)  with alpha = -ln q
// and log_beta = 2 delta <= alpha.
double log_tail(double alpha, double log_beta, double log_peak, std::int64_t k) {
  const double kk = static_cast<double>(k);
  const double ratio = -alpha * (2.0 * kk + 1.0) + log_beta;
  return std::log(2.0) + log_peak - alpha * kk * kk + log_beta * kk -
         std::log1p(-std::exp(ratio));
}

std::int64_t minimal_radius(double alpha, double log_beta, double log_peak,
                            double eps, double& tail) {
  const double log_eps = std::log(eps);
  for (std::int64_t k = 1; k <= kWindowCap; ++k) {
    const double lt = log_tail(alpha, log_beta, log_peak, k);
    if (lt <= log_eps) {
      tail = std::exp(lt);
      return k;
    }
  }
  throw NonConvergence("theta3: truncation window exceeds cap of " +
                       std::to_string(kWindowCap) + " terms");
}

bool vanishing_nome(const ThetaArgs& args) {
  return args.log_nome == 0.0 && args.q == 0.0;
}

}  // namespace

double ThetaArgs::ln_q() const {
  return log_nome != 0.0 ? log_nome : std::log(q);
}

TruncationPlan truncation_bound(double q, double eps) {
  validate(q, eps);
  if (q == 0.0) return {-1, 1, 0.0};
  double tail = 0.0;
  const std::int64_t m = minimal_radius(-std::log(q), 0.0, 0.0, eps, tail);
  return {-m, m, tail};
}

TruncationPlan theta3_window(const ThetaArgs& args) {
  validate(args);
  if (vanishing_nome(args)) return {0, 0, 0.0};

  const double alpha = -args.ln_q();
  const double y = args.z.imag();
  // |term n| = exp(-alpha n^2 - 2 n y) peaks at n = -y / alpha.
  const double centre = -y / alpha;
  if (!std::isfinite(centre) || std::abs(centre) > 1e15) {
    throw NonConvergence("theta3: term peak index out of range (Im z too large for nome)");
  }
  const auto c = static_cast<std::int64_t>(std::llround(centre));
  const double cd = static_cast<double>(c);
  const double delta = std::abs(alpha * cd + y);
  const double log_peak = args.log_scale.real() - alpha * cd * cd - 2.0 * cd * y;
  if (log_peak > std::log(std::numeric_limits<double>::max())) {
    throw NonConvergence("theta3: peak term overflows double precision");
  }
  double tail = 0.0;
  const std::int64_t k = minimal_radius(alpha, 2.0 * delta, log_peak, args.eps, tail);
  return {c - k, c + k, tail};
}

std::complex<double> theta3(const ThetaArgs& args) {
  const TruncationPlan plan = theta3_window(args);
  if (vanishing_nome(args)) return std::exp(args.log_scale);

  const double alpha = -args.ln_q();
  const double x = args.z.real();
  const double y = args.z.imag();
  auto term = [&](std::int64_t n) {
    const double nd = static_cast<double>(n);
    const double re = args.log_scale.real() - alpha * nd * nd - 2.0 * nd * y;
    const double im = args.log_scale.imag() + 2.0 * nd * x;
    return std::polar(std::exp(re), im);
  };

  // Outermost pairs first, centre term last.
  const std::int64_t c = (plan.n_min + plan.n_max) / 2;
  std::complex<double> sum = 0.0;
  for (std::int64_t k = plan.radius(); k >= 1; --k) {
    sum += term(c + k) + term(c - k);
  }
  sum += term(c);
  return sum;
}

}  // namespace thetastate
