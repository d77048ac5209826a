#pragma once

// Alternative base shapes with a single grafted outlier. For a base set and
// a target kurtosis, bisect on the outlier value until the combined set hits
// the target, then report (X_1 - mean)/sigma. Both the statistic and the
// kurtosis are affine invariant, so base sets are used unscaled.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace kurtail {

enum class BaseShape {
  bimodal,    ///< equal counts at -1 and 1, kurtosis 1
  trimodal,   ///< equal counts at -1, 0, 1, kurtosis 1.5
  two_thirds, ///< two thirds at 0, one third at 1, kurtosis 1.5
  uniform,    ///< equally spaced on [-1, 1] including endpoints, kurtosis -> 1.8
};

inline constexpr BaseShape kAllBaseShapes[] = {BaseShape::bimodal, BaseShape::trimodal,
                                               BaseShape::two_thirds, BaseShape::uniform};

std::string_view to_string(BaseShape kind);
BaseShape parse_base_shape(std::string_view name);

/// Nominal kurtosis of the continuous / evenly divisible shape.
double nominal_kurtosis(BaseShape kind);

/// m points of the given shape. When m is not a multiple of the shape's mode
/// count, the remainder goes to the outermost modes: upper first, then lower.
Eigen::VectorXd generate_base(BaseShape kind, std::int64_t m);

struct OutlierSearchResult {
  double a_statistic;   ///< (x1 - mean) / sigma of the final set
  double outlier_value; ///< x1 on the base's own scale
  double achieved_kappa;
  int iterations;
};

/// Searches x1 > max(base) so that base + {x1} has population kurtosis target_kappa.
/// Throws SearchError when the target cannot be bracketed or kurtosis is not
/// monotone over the bracket.
OutlierSearchResult search_outlier(const Eigen::Ref<const Eigen::VectorXd>& base, double target_kappa);

/// n is the total count including the outlier, so the base has n - 1 points.
OutlierSearchResult search_outlier(BaseShape kind, std::int64_t n, double target_kappa);

struct ComparisonRow {
  std::int64_t base_count; ///< N - 1
  double samuelson_bound;  ///< sqrt(N - 1)
  double bimodal;
  double trimodal;
  double two_thirds;
  double uniform;

  double statistic(BaseShape kind) const;
};

/// One row per base count m (total N = m + 1).
std::vector<ComparisonRow> comparison_table(std::span<const std::int64_t> base_counts, double target_kappa);

} // namespace kurtail
