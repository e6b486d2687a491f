#include "thetastate/moments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "thetastate/oracle.hpp"
#include "thetastate/verify.hpp"

using namespace thetastate;

namespace {
constexpr double kPi = std::numbers::pi;
const double kHalfLimitSq = kPi * kPi / 3.0 - 2.0;
}  // namespace

TEST(MeanL, IntegerAndHalfIntegerExact) {
  for (double lambda : {0.02, 0.05, kCrossoverLambda, 1.0, 20.0}) {
    for (double l : {-2.0, 0.0, 3.0, 0.5, 1.5, 7.5}) {
      EXPECT_NEAR(mean_L(State({lambda, l})), l, 1e-12) << lambda << " " << l;
    }
  }
}

TEST(MeanL, TwoLevelRegime) {
  const double expected = 1.0 / (1.0 + std::exp(2.0));
  EXPECT_NEAR(mean_L(State({0.05, 0.45})), expected, 1e-6);
  EXPECT_NEAR(mean_L(State({0.05, 3.45})), 3.0 + expected, 1e-6);
}

TEST(MeanLSq, Examples) {
  EXPECT_NEAR(mean_L_sq(State({1e-3, 0.0})), 0.0, 1e-100);
  EXPECT_NEAR(mean_L_sq(State({0.01, 1.5})), (1.0 + 4.0) / 2.0, 1e-12);

  long double num = 0.0L;
  long double den = 0.0L;
  for (int n = -30; n <= 30; ++n) {
    num += static_cast<long double>(n) * n * std::exp(-static_cast<long double>(n) * n);
    den += std::exp(-static_cast<long double>(n) * n);
  }
  const double expected = static_cast<double>(num / den);
  EXPECT_NEAR(expected, 0.49897913, 1e-8);
  EXPECT_NEAR(mean_L_sq(State({1.0, 0.0})), expected, 1e-14);
}

TEST(MeanTheta, SymmetricCases) {
  for (double tb : {0.0, kPi, -kPi}) {
    for (double l : {0.0, 0.45, 1.5}) {
      EXPECT_NEAR(mean_theta(State({0.7, l, tb})), 0.0, 1e-12);
    }
  }
}

TEST(MeanTheta, GaussianRegimeFollowsCentre) {
  const State s({5.0, 0.0, 0.3});
  EXPECT_NEAR(mean_theta(s), 0.3, 1e-3);
  EXPECT_NEAR(mean_theta(s), quad_moments(s).mean_theta, 1e-10);
}

TEST(MeanTheta, MatchesOrderedDoubleSum) {
  for (double lambda : {0.1, 0.5, 2.0}) {
    for (double l : {0.0, 0.3, 1.5}) {
      for (double tb : {0.0, 0.4, -1.1}) {
        for (double a : {-kPi, -1.0, 0.5}) {
          const State s({lambda, l, tb, a});
          const auto ref = brute::theta_moments(lambda, l, tb, a);
          EXPECT_NEAR(mean_theta(s), static_cast<double>(ref.mean), 1e-12);
          EXPECT_NEAR(mean_theta_sq(s), static_cast<double>(ref.mean_sq), 1e-11);
        }
      }
    }
  }
}

TEST(MeanThetaSq, Limits) {
  EXPECT_NEAR(mean_theta_sq(State({1e-3, 2.0})), kPi * kPi / 3.0, 1e-12);
  EXPECT_NEAR(mean_theta_sq(State({1e-3, 1.5})), kHalfLimitSq, 1e-12);
  EXPECT_NEAR(mean_theta_sq(State({20.0, 0.0})), 0.025, 1e-4);
}

TEST(MeanThetaSq, SymmetricWindowFormAgrees) {
  for (double lambda : {0.05, 0.5, 4.0}) {
    for (double l : {0.0, 0.45, 2.5}) {
      for (double tb : {0.0, 0.7}) {
        const State s({lambda, l, tb});
        EXPECT_NEAR(mean_theta_sq_symmetric_window(s), mean_theta_sq(s), 1e-12);
      }
    }
  }
}

TEST(CrossCorrelation, PurelyImaginaryWithBoundaryTerm) {
  for (double lambda : {0.05, kCrossoverLambda, 1.0, 5.0}) {
    for (double l : {0.0, 0.45, 0.5, 2.0}) {
      const State s({lambda, l});
      const auto c = cross_correlation(s);
      const double edge = std::norm(psi(s, kPi));
      EXPECT_NEAR(c.real(), 0.0, 1e-12);
      EXPECT_NEAR(c.imag(), (1.0 - 2.0 * kPi * edge) / 2.0, 1e-10);
    }
  }
  EXPECT_NEAR(std::abs(cross_correlation(State({0.3, 1.5})) - std::complex<double>(0.0, 0.5)), 0.0, 1e-12);
  EXPECT_NEAR(cross_correlation(State({20.0, 0.0})).imag(), 0.5, 1e-12);
}

TEST(UncertaintyReport, Examples) {
  const auto g = uncertainty_report(State({20.0, 0.0}));
  EXPECT_NEAR(g.product, 0.5, 2e-3);
  EXPECT_NEAR(g.delta_theta, 1.0 / std::sqrt(40.0), 1e-4);

  const auto h = uncertainty_report(State({1e-3, 1.5}));
  EXPECT_NEAR(h.delta_theta, std::sqrt(kHalfLimitSq), 1e-10);
  EXPECT_NEAR(h.delta_L, 0.5, 1e-10);
  EXPECT_NEAR(h.product, 0.5 * std::sqrt(kHalfLimitSq), 1e-10);
  EXPECT_NEAR(h.product, 0.5679, 1e-4);

  const auto z = uncertainty_report(State({1e-3, 0.0}));
  EXPECT_NEAR(z.delta_theta, kPi / std::sqrt(3.0), 1e-10);
  EXPECT_LT(z.product, 1e-100);
}

TEST(UncertaintyReport, InequalitiesOnStandardGrid) {
  for (double lambda : standard_lambdas()) {
    for (double l : standard_lbars()) {
      for (double tb : {0.0, 0.3}) {
        const auto r = uncertainty_report(State({lambda, l, tb}));
        EXPECT_GE(r.product - std::abs(r.cross_corr.imag()), -kInequalitySlack);
        EXPECT_GE(r.product - r.kraus_bound, -kInequalitySlack);
        EXPECT_LE(r.norm_residual, 1e-12);
      }
    }
  }
}

TEST(UncertaintyReport, IntegerShiftCovariance) {
  for (double lambda : {0.05, 0.9, 6.0}) {
    const auto a = uncertainty_report(State({lambda, 0.3, 0.2}));
    const auto b = uncertainty_report(State({lambda, 1.3, 0.2}));
    EXPECT_NEAR(b.mean_L - a.mean_L, 1.0, 1e-12);
    EXPECT_NEAR(b.delta_L, a.delta_L, 1e-12);
    EXPECT_NEAR(b.delta_theta, a.delta_theta, 1e-12);
  }
}

TEST(HalfIntegerGaps, StrictAndConsistent) {
  for (double lambda : {0.02, 0.1, 1.0, 10.0}) {
    const State s({lambda, 1.5});
    const auto gaps = half_integer_gaps(s);
    EXPECT_GT(gaps.theta_sq_gap, 0.0);
    EXPECT_GT(gaps.L_sq_gap, 0.0);
    const auto r = uncertainty_report(s);
    EXPECT_NEAR(kHalfLimitSq - r.delta_theta * r.delta_theta, gaps.theta_sq_gap, 1e-12);
    EXPECT_NEAR(r.delta_L * r.delta_L - 0.25, gaps.L_sq_gap, 1e-12 * std::max(1.0, r.delta_L * r.delta_L));
  }
  EXPECT_THROW(half_integer_gaps(State({1.0, 1.45})), std::invalid_argument);
  EXPECT_THROW(half_integer_gaps(State({1.0, 1.5, 0.3})), std::invalid_argument);
}
