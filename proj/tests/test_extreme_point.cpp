#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"
#include "kurtail/moments.hpp"

using namespace kurtail;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

} // namespace

TEST(FeasibleKurtosisRange, SmallestN) {
  const auto r = feasible_kurtosis_range(5);
  EXPECT_DOUBLE_EQ(r.kappa_min, 28.0 / 24.0);
  EXPECT_DOUBLE_EQ(r.kappa_max, 13.0 / 4.0);
  EXPECT_LT(r.kappa_min, r.kappa_max);
}

TEST(FeasibleKurtosisRange, LargeN) {
  const auto r = feasible_kurtosis_range(251);
  EXPECT_NEAR(r.kappa_min, 1.0 + 4.0 / (251.0 * 251.0 - 1.0), 1e-15);
  EXPECT_NEAR(r.kappa_max, (251.0 * 251.0 - 3 * 251.0 + 3) / 250.0, 1e-12);
}

TEST(FeasibleKurtosisRange, RejectsNBelowFive) {
  EXPECT_THROW(feasible_kurtosis_range(4.9), DomainError);
  EXPECT_THROW(solve_extreme_point(3, 2), DomainError);
}

TEST(SolveExtremePoint, PublishedCells) {
  EXPECT_NEAR(solve_extreme_point(250, 7).a, 6.296, 0.0005);
  EXPECT_NEAR(solve_extreme_point(500, 7).a, 7.464, 0.0005);
  EXPECT_NEAR(solve_extreme_point(1e6, 16).a, 62.241, 0.0005);
  EXPECT_NEAR(solve_extreme_point(250, 6).a, 6.023, 0.0005);
}

TEST(SolveExtremePoint, MinusSignRootMissesPublishedGrid) {
  // The minus-sign form lands near 6.14 at (250, 7); the table says 6.296.
  const double n = 250, kappa = 7;
  const double r = (n - 1) / (n + 1);
  const double printed = std::sqrt(-r + std::sqrt(r * r - quadratic_constant(n, kappa)));
  EXPECT_GT(std::fabs(printed - 6.296), 0.1);
  EXPECT_NEAR(solve_extreme_point(n, kappa).a, 6.296, 0.0005);
}

TEST(SolveExtremePoint, SamuelsonEndpoint) {
  for (double n : {5.0, 11.0, 251.0, 10001.0, 1e6 + 1}) {
    const auto range = feasible_kurtosis_range(n);
    const auto s = solve_extreme_point(n, range.kappa_max);
    EXPECT_LT(rel_err(s.a, std::sqrt(n - 1)), 1e-9) << n;
    EXPECT_NEAR(s.b_squared, 0.0, 1e-9) << n;
    EXPECT_DOUBLE_EQ(s.samuelson_bound, std::sqrt(n - 1));
  }
  EXPECT_NEAR(solve_extreme_point(251, feasible_kurtosis_range(251).kappa_max).a, 15.811, 0.0005);
}

TEST(SolveExtremePoint, LowerEndpointIsBalancedTwoPointSet) {
  for (std::int64_t n : {5, 11, 101, 1001}) {
    const double nd = static_cast<double>(n);
    const auto range = feasible_kurtosis_range(nd);
    const auto s = solve_extreme_point(nd, range.kappa_min);
    EXPECT_NEAR(s.a * s.a, (nd - 1) / (nd + 1), 1e-12);
    // The outlier coincides with the upper mode: (N+1)/2 points at one level.
    EXPECT_NEAR(std::sqrt(s.b_squared) - s.a / (nd - 1), s.a, 1e-12);
    const auto x = construct_distribution(n, range.kappa_min);
    EXPECT_NEAR(oracle_moments(x).kurtosis, range.kappa_min, 1e-12);
  }
}

TEST(SolveExtremePoint, InfeasibleCarriesRange) {
  try {
    solve_extreme_point(11, 50);
    FAIL() << "expected InfeasibleKurtosis";
  } catch (const InfeasibleKurtosis& e) {
    EXPECT_DOUBLE_EQ(e.kappa(), 50);
    EXPECT_DOUBLE_EQ(e.kappa_max(), feasible_kurtosis_range(11).kappa_max);
    EXPECT_DOUBLE_EQ(e.kappa_min(), feasible_kurtosis_range(11).kappa_min);
  }
  EXPECT_THROW(solve_extreme_point(11, 1.0), InfeasibleKurtosis);
}

TEST(SolveExtremePoint, QuadraticResidualProperty) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_n(std::log(5.0), std::log(1e7));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double n = std::exp(log_n(rng));
    const auto range = feasible_kurtosis_range(n);
    const double kappa = range.kappa_min + frac(rng) * (range.kappa_max - range.kappa_min);
    const auto s = solve_extreme_point(n, kappa);
    const double a2 = s.a * s.a;
    // Scale by the size of the largest term so the check is relative.
    const double scale = std::max({a2 * a2, std::fabs(s.g_value), 1.0});
    EXPECT_LT(std::fabs(quadratic_residual(n, kappa, a2)) / scale, 1e-9) << n << " " << kappa;
    EXPECT_GT(s.a, 0.0);
    EXPECT_LE(s.a, std::sqrt(n - 1) * (1 + 1e-12));
    EXPECT_GE(s.b_squared, 0.0);
  }
}

TEST(SolveExtremePoint, AgreesWithLongDouble) {
  for (double n : {5.0, 250.0, 833208.0, 1e8}) {
    for (double kappa : {3.0, 7.0, 16.0}) {
      if (!feasible_kurtosis_range(n).contains(kappa)) continue;
      const auto d = solve_extreme_point<double>(n, kappa);
      const auto ld = solve_extreme_point<long double>(n, kappa);
      EXPECT_LT(rel_err(d.a, static_cast<double>(ld.a)), 1e-13);
      EXPECT_LT(rel_err(d.theta3, static_cast<double>(ld.theta3)), 1e-12);
    }
  }
}

TEST(SolveExtremePoint, MonotoneInKappaAndN) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_n(std::log(5.0), std::log(1e7));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double n = std::exp(log_n(rng));
    const auto range = feasible_kurtosis_range(n);
    const double k1 = range.kappa_min + frac(rng) * (range.kappa_max - range.kappa_min);
    const double k2 = k1 + (range.kappa_max - k1) * (0.01 + 0.99 * frac(rng));
    EXPECT_LT(solve_extreme_point(n, k1).a, solve_extreme_point(n, k2).a);
    const double n2 = n * (1.0 + 0.5 * frac(rng)) + 1.0;
    EXPECT_LT(solve_extreme_point(n, k1).a, solve_extreme_point(n2, k1).a) << n << " " << n2 << " " << k1;
  }
}

TEST(SolveExtremePoint, ConstructedDatasetMatchesClosedForm) {
  for (std::int64_t n : {11, 101, 1001, 10001}) {
    const auto range = feasible_kurtosis_range(static_cast<double>(n));
    for (double t : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      const double kappa = range.kappa_min + t * (range.kappa_max - range.kappa_min);
      const auto s = solve_extreme_point(static_cast<double>(n), kappa);
      const auto x = construct_distribution(n, kappa);
      const auto m = oracle_moments(x);
      EXPECT_NEAR(m.mean, 0.0, 1e-12);
      EXPECT_LT(rel_err(m.variance, 1.0), 1e-9);
      EXPECT_LT(rel_err(m.skewness, s.theta3), 1e-9) << n << " " << kappa;
      EXPECT_LT(rel_err(m.kurtosis, kappa), 1e-9) << n << " " << kappa;
      EXPECT_DOUBLE_EQ(x.maxCoeff(), s.a);
      EXPECT_LT(rel_err((x.maxCoeff() - m.mean) / m.sigma(), s.a), 1e-9);
    }
  }
}

TEST(ConstructDistribution, SmallCase) {
  const auto x = construct_distribution(5, 2.0);
  ASSERT_EQ(x.size(), 5);
  const auto m = oracle_moments(x);
  EXPECT_NEAR(m.mean, 0.0, 1e-12);
  EXPECT_NEAR(m.variance, 1.0, 1e-12);
  EXPECT_NEAR(m.kurtosis, 2.0, 1e-12);
}

TEST(ConstructDistribution, KurtosisSevenAt101) {
  EXPECT_NEAR(oracle_moments(construct_distribution(101, 7.0)).kurtosis, 7.0, 1e-9);
}

TEST(ConstructDistribution, RejectsEvenN) {
  EXPECT_THROW(construct_distribution(100, 7.0), DomainError);
}

TEST(ThirdMoment, ZeroAtZeroA) { EXPECT_DOUBLE_EQ(third_moment(101, 0.0), 0.0); }

TEST(ThirdMoment, LargeNValue) {
  // Frozen from an independent evaluation of the closed form (0.381088 to 6 places).
  const auto s = solve_extreme_point(10001, 7);
  EXPECT_NEAR(third_moment(s), 0.381088, 5e-6);
}

TEST(ThirdMoment, LargeNAsymptoticShape) {
  const double n = 1e10, kappa = 7;
  const double limit = -3 * std::pow(kappa - 1, 0.25) * std::pow(n, -0.75) + std::pow(kappa - 1, 0.75) * std::pow(n, -0.25);
  EXPECT_LT(rel_err(solve_extreme_point(n, kappa).theta3, limit), 0.01);
}

TEST(AsymptoticA, LeadingOrderAtOneMillion) {
  const double lead = leading_order_a(1e6, 16);
  EXPECT_NEAR(lead, std::pow(1.5e7, 0.25), 1e-12);
  EXPECT_NEAR(lead, 62.233, 0.0005);
  EXPECT_LT(rel_err(lead, 62.241), 0.0005);
}

TEST(AsymptoticA, SignCorrectedTracksExactRoot) {
  const double exact = solve_extreme_point(250, 7).a;
  const double corrected = asymptotic_a(250, 7, AsymptoticForm::sign_corrected);
  const double printed = asymptotic_a(250, 7, AsymptoticForm::minus_sign);
  EXPECT_LT(rel_err(corrected, exact), 0.01);
  EXPECT_GT(rel_err(printed, exact), rel_err(corrected, exact));
}

TEST(AsymptoticA, AgreementForLargeN) {
  for (double n : {1e6, 1e7, 1e8}) {
    for (double kappa : {3.0, 7.0, 10.0, 13.0, 16.0}) {
      const double a = solve_extreme_point(n, kappa).a;
      EXPECT_LT(std::fabs(a - leading_order_a(n, kappa)) / a, 0.01) << n << " " << kappa;
    }
  }
}

TEST(AsymptoticA, DegenerateKappa) {
  EXPECT_THROW(asymptotic_a(100, 1.0, AsymptoticForm::sign_corrected), DomainError);
  EXPECT_DOUBLE_EQ(leading_order_a(100, 1.0), 0.0);
}

TEST(SamuelsonBound, Values) {
  EXPECT_DOUBLE_EQ(samuelson_bound(10001), 100.0);
  EXPECT_DOUBLE_EQ(samuelson_bound(2), 1.0);
  EXPECT_DOUBLE_EQ(samuelson_bound(1000001), 1000.0);
  EXPECT_THROW(samuelson_bound(1), DomainError);
}
