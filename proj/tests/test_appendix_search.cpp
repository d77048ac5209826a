#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kurtail/appendix_search.hpp"
#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"
#include "kurtail/moments.hpp"

using namespace kurtail;

TEST(GenerateBase, Bimodal) {
  const auto x = generate_base(BaseShape::bimodal, 6);
  Eigen::VectorXd want(6);
  want << -1, -1, -1, 1, 1, 1;
  EXPECT_EQ(x, want);
  EXPECT_DOUBLE_EQ(oracle_moments(x).kurtosis, 1.0);
}

TEST(GenerateBase, Trimodal) {
  const auto x = generate_base(BaseShape::trimodal, 6);
  Eigen::VectorXd want(6);
  want << -1, -1, 0, 0, 1, 1;
  EXPECT_EQ(x, want);
  EXPECT_NEAR(oracle_moments(x).kurtosis, 1.5, 1e-14);
}

TEST(GenerateBase, TwoThirds) {
  const auto x = generate_base(BaseShape::two_thirds, 9);
  EXPECT_EQ((x.array() == 0.0).count(), 6);
  EXPECT_EQ((x.array() == 1.0).count(), 3);
  EXPECT_NEAR(oracle_moments(x).kurtosis, 1.5, 1e-14);
}

TEST(GenerateBase, RemainderGoesToOuterModes) {
  const auto tri = generate_base(BaseShape::trimodal, 8); // 3 at -1, 2 at 0, 3 at 1
  EXPECT_EQ((tri.array() == -1.0).count(), 3);
  EXPECT_EQ((tri.array() == 0.0).count(), 2);
  EXPECT_EQ((tri.array() == 1.0).count(), 3);
  const auto tri7 = generate_base(BaseShape::trimodal, 7); // upper first
  EXPECT_EQ((tri7.array() == 1.0).count(), 3);
  const auto bi = generate_base(BaseShape::bimodal, 7);
  EXPECT_EQ((bi.array() == 1.0).count(), 4);
}

TEST(GenerateBase, UniformApproachesOnePointEight) {
  const auto x = generate_base(BaseShape::uniform, 1000);
  EXPECT_DOUBLE_EQ(x(0), -1.0);
  EXPECT_DOUBLE_EQ(x(999), 1.0);
  // Discrete uniform on m points: kurtosis = 9/5 - 12/(5 (m^2 - 1)) ... within 0.01 either way.
  EXPECT_NEAR(oracle_moments(x).kurtosis, 1.8, 0.01);
  EXPECT_NEAR(oracle_moments(generate_base(BaseShape::uniform, 500)).kurtosis, 1.8, 0.01);
}

TEST(GenerateBase, TooSmall) { EXPECT_THROW(generate_base(BaseShape::uniform, 3), DomainError); }

TEST(SearchOutlier, BimodalMatchesClosedForm) {
  for (std::int64_t n : {11, 101, 501, 1001}) {
    for (double kappa : {3.0, 7.0}) {
      if (!feasible_kurtosis_range(static_cast<double>(n)).contains(kappa)) continue;
      const auto r = search_outlier(BaseShape::bimodal, n, kappa);
      EXPECT_LT(std::fabs(r.a_statistic - solve_extreme_point(static_cast<double>(n), kappa).a), 1e-6);
      EXPECT_NEAR(r.achieved_kappa, kappa, 1e-9);
    }
  }
  const auto r = search_outlier(BaseShape::bimodal, 501, 16.0);
  EXPECT_NEAR(r.a_statistic, 9.35, 0.02);
  EXPECT_LT(std::fabs(r.a_statistic - solve_extreme_point(501, 16).a), 1e-6);
}

TEST(SearchOutlier, PublishedAlternatives) {
  EXPECT_NEAR(search_outlier(BaseShape::trimodal, 10001, 16.0).a_statistic, 19.55, 0.02);
  EXPECT_NEAR(search_outlier(BaseShape::uniform, 1001, 16.0).a_statistic, 10.99, 0.02);
}

TEST(SearchOutlier, AchievesTarget) {
  for (auto kind : kAllBaseShapes) {
    for (double kappa : {4.0, 16.0, 40.0}) {
      const auto r = search_outlier(kind, 2001, kappa);
      EXPECT_NEAR(r.achieved_kappa, kappa, 1e-9) << to_string(kind);
    }
  }
}

TEST(SearchOutlier, AffineInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (auto kind : kAllBaseShapes) {
    const Eigen::VectorXd base = generate_base(kind, 600);
    const auto ref = search_outlier(base, 12.0);
    for (int i = 0; i < 5; ++i) {
      const double s = scale(rng), c = shift(rng);
      const Eigen::VectorXd moved = (s * base.array() + c).matrix();
      const auto r = search_outlier(moved, 12.0);
      EXPECT_NEAR(r.a_statistic, ref.a_statistic, 1e-9 * ref.a_statistic) << to_string(kind);
      EXPECT_NEAR(r.outlier_value, s * ref.outlier_value + c, 1e-8 * std::fabs(s * ref.outlier_value + c));
    }
  }
}

TEST(SearchOutlier, UnreachableTargets) {
  EXPECT_THROW(search_outlier(BaseShape::trimodal, 101, 1.2), SearchError);
  EXPECT_THROW(search_outlier(BaseShape::bimodal, 11, 500.0), SearchError);
  Eigen::VectorXd heavy = Eigen::VectorXd::Zero(50);
  heavy(0) = 100.0; // already far above the target at the bracket start
  EXPECT_THROW(search_outlier(heavy, 3.0), SearchError);
}

TEST(ComparisonTable, RowFiveHundred) {
  const std::int64_t counts[] = {500};
  const auto rows = comparison_table(counts, 16.0);
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  EXPECT_DOUBLE_EQ(r.samuelson_bound, std::sqrt(500.0));
  EXPECT_NEAR(r.bimodal, 9.35, 0.02);
  EXPECT_NEAR(r.trimodal, 9.30, 0.02);
  EXPECT_NEAR(r.two_thirds, 9.30, 0.02);
  EXPECT_NEAR(r.uniform, 9.26, 0.02);
}

TEST(ComparisonTable, BimodalDominates) {
  const std::int64_t counts[] = {100, 500, 3000};
  for (double kappa : {7.0, 16.0}) {
    for (const auto& r : comparison_table(counts, kappa)) {
      for (auto kind : kAllBaseShapes) EXPECT_GE(r.bimodal + 1e-9, r.statistic(kind));
    }
  }
}

TEST(ComparisonTable, ShapesAgreeAtSixteen) {
  // The 1.5% spread holds for the kappa = 16 grid; at kappa = 7 or small m it widens to ~3%.
  const std::int64_t counts[] = {500, 2000, 10000};
  for (const auto& r : comparison_table(counts, 16.0)) {
    for (auto kind : kAllBaseShapes) EXPECT_LT((r.bimodal - r.statistic(kind)) / r.bimodal, 0.015);
  }
  const std::int64_t row3000[] = {3000};
  EXPECT_NEAR(comparison_table(row3000, 16.0)[0].bimodal, 14.59, 0.02);
}

TEST(BaseShapeNames, RoundTrip) {
  for (auto kind : kAllBaseShapes) EXPECT_EQ(parse_base_shape(to_string(kind)), kind);
  EXPECT_THROW(parse_base_shape("gaussian"), LookupError);
}
