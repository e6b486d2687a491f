#pragma once

// Composite Gauss-Legendre quadrature with panel doubling.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetastate {

struct QuadratureSpec {
  int panels = 32;
  int nodes_per_panel = 16;
  double refine_tol = 1e-12;
  int max_panels = 1 << 14;

  void validate() const {
    if (panels < 1 || nodes_per_panel < 2 || !(refine_tol > 0.0) || max_panels < panels) {
      throw std::invalid_argument("QuadratureSpec: need panels >= 1, nodes_per_panel >= 2, refine_tol > 0");
    }
  }
};

/// Raised when panel doubling hits max_panels before two successive estimates
/// agree to refine_tol. Carries the last change for diagnostics.
class QuadratureNonConvergence : public std::runtime_error {
 public:
  QuadratureNonConvergence(const std::string& what, double last_change)
      : std::runtime_error(what), last_change_(last_change) {}
  double last_change() const { return last_change_; }

 private:
  double last_change_;
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(int n);
};

namespace detail {

inline double distance(double a, double b) { return std::abs(a - b); }
inline double distance(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

template <typename T, std::size_t K>
double distance(const std::array<T, K>& a, const std::array<T, K>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < K; ++i) d = std::max(d, distance(a[i], b[i]));
  return d;
}

template <typename T>
void axpy(T& acc, double w, const T& v) { acc += w * v; }

template <typename T, std::size_t K>
void axpy(std::array<T, K>& acc, double w, const std::array<T, K>& v) {
  for (std::size_t i = 0; i < K; ++i) acc[i] += w * v[i];
}

}  // namespace detail

template <typename R>
struct QuadratureResult {
  R value{};
  int panels = 0;
  double last_change = 0.0;
};

template <typename R, typename F>
R integrate_fixed(F&& f, double a, double b, int panels, const GaussLegendreRule& rule) {
  R total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      detail::axpy(panel, rule.weights[i], f(mid + 0.5 * h * rule.nodes[i]));
    }
    detail::axpy(total, 0.5 * h, panel);
  }
  return total;
}

/// Integrates f over [a, b], doubling the panel count until two successive
/// estimates differ by less than spec.refine_tol (max-abs over components).
template <typename R, typename F>
QuadratureResult<R> integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  spec.validate();
  const GaussLegendreRule rule(spec.nodes_per_panel);
  int panels = spec.panels;
  R prev = integrate_fixed<R>(f, a, b, panels, rule);
  double change = 0.0;
  while (panels < spec.max_panels) {
    panels *= 2;
    R next = integrate_fixed<R>(f, a, b, panels, rule);
    change = detail::distance(next, prev);
    prev = next;
    if (change < spec.refine_tol) return {prev, panels, change};
  }
  throw QuadratureNonConvergence(
      "quadrature: panel cap reached, last change " + std::to_string(change), change);
}

}  // namespace thetastate
