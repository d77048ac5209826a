#include "kurtail/appendix_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"
#include "kurtail/moments.hpp"

namespace kurtail {

namespace {

Eigen::VectorXd from_counts(std::initializer_list<std::pair<double, std::int64_t>> levels) {
  std::int64_t total = 0;
  for (const auto& [v, c] : levels) total += c;
  Eigen::VectorXd x(total);
  Eigen::Index i = 0;
  for (const auto& [v, c] : levels) {
    x.segment(i, c).setConstant(v);
    i += c;
  }
  return x;
}

// Kurtosis of base + {x} in O(1) from the base's central power sums.
class GraftedKurtosis {
public:
  explicit GraftedKurtosis(const Eigen::Ref<const Eigen::VectorXd>& base)
      : m_(static_cast<double>(base.size())), mean_(base.mean()) {
    const Eigen::ArrayXd d = base.array() - mean_;
    const Eigen::ArrayXd d2 = d.square();
    s2_ = d2.sum();
    s3_ = (d2 * d).sum();
    s4_ = d2.square().sum();
  }

  double operator()(double x) const {
    const double y = x - mean_;
    const double n = m_ + 1.0;
    const double delta = y / n;
    const double e = y - delta;
    const double c2 = s2_ + m_ * delta * delta + e * e;
    const double c4 = s4_ - 4.0 * delta * s3_ + 6.0 * delta * delta * s2_ + m_ * std::pow(delta, 4) +
                      std::pow(e, 4);
    return n * c4 / (c2 * c2);
  }

private:
  double m_;
  double mean_;
  double s2_ = 0, s3_ = 0, s4_ = 0;
};

} // namespace

std::string_view to_string(BaseShape kind) {
  switch (kind) {
    case BaseShape::bimodal: return "bimodal";
    case BaseShape::trimodal: return "trimodal";
    case BaseShape::two_thirds: return "two_thirds";
    case BaseShape::uniform: return "uniform";
  }
  return "unknown";
}

BaseShape parse_base_shape(std::string_view name) {
  for (auto kind : kAllBaseShapes) {
    if (to_string(kind) == name) return kind;
  }
  throw LookupError("unknown base shape '" + std::string(name) +
                    "'; expected bimodal, trimodal, two_thirds or uniform");
}

double nominal_kurtosis(BaseShape kind) {
  switch (kind) {
    case BaseShape::bimodal: return 1.0;
    case BaseShape::trimodal: return 1.5;
    case BaseShape::two_thirds: return 1.5;
    case BaseShape::uniform: return 1.8;
  }
  return 0.0;
}

Eigen::VectorXd generate_base(BaseShape kind, std::int64_t m) {
  if (m < 4) {
    throw DomainError("generate_base: need at least 4 points");
  }
  switch (kind) {
    case BaseShape::bimodal: {
      const std::int64_t lower = m / 2;
      return from_counts({{-1.0, lower}, {1.0, m - lower}});
    }
    case BaseShape::trimodal: {
      const std::int64_t q = m / 3, r = m % 3;
      return from_counts({{-1.0, q + (r >= 2 ? 1 : 0)}, {0.0, q}, {1.0, q + (r >= 1 ? 1 : 0)}});
    }
    case BaseShape::two_thirds: {
      const std::int64_t q = m / 3, r = m % 3;
      return from_counts({{0.0, 2 * q + (r >= 2 ? 1 : 0)}, {1.0, q + (r >= 1 ? 1 : 0)}});
    }
    case BaseShape::uniform:
      return Eigen::VectorXd::LinSpaced(m, -1.0, 1.0);
  }
  throw DomainError("generate_base: unknown shape");
}

OutlierSearchResult search_outlier(const Eigen::Ref<const Eigen::VectorXd>& base, double target_kappa) {
  const auto m = base.size();
  if (m < 4) {
    throw DomainError("search_outlier: base needs at least 4 points");
  }
  const double n = static_cast<double>(m + 1);
  const double kappa_ceiling = (n * n - 3.0 * n + 3.0) / (n - 1.0);
  if (!(target_kappa < kappa_ceiling)) {
    throw SearchError("search_outlier: target kurtosis " + std::to_string(target_kappa) +
                      " not reachable with " + std::to_string(m + 1) + " points (limit " +
                      std::to_string(kappa_ceiling) + ")");
  }
  const GraftedKurtosis kurt(base);
  double lo = base.maxCoeff();
  double k_lo = kurt(lo);
  if (!(k_lo < target_kappa)) {
    throw SearchError("search_outlier: target kurtosis " + std::to_string(target_kappa) +
                      " is not above the kurtosis at the bracket start (" + std::to_string(k_lo) + ")");
  }
  const double span = std::max(base.maxCoeff() - base.minCoeff(), 1e-300);
  double step = span;
  double hi = lo + step;
  double k_hi = kurt(hi);
  int iterations = 0;
  while (k_hi < target_kappa) {
    if (k_hi < k_lo) {
      throw SearchError("search_outlier: kurtosis not monotone while bracketing");
    }
    lo = hi;
    k_lo = k_hi;
    step *= 2.0;
    hi = lo + step;
    k_hi = kurt(hi);
    if (!std::isfinite(hi) || ++iterations > 2000) {
      throw SearchError("search_outlier: could not bracket target kurtosis");
    }
  }
  for (int i = 0; i < 400; ++i, ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double k_mid = kurt(mid);
    const double slack = 1e-12 * k_hi;
    if (k_mid < k_lo - slack || k_mid > k_hi + slack) {
      throw SearchError("search_outlier: kurtosis not monotone over the bracket near x1 = " +
                        std::to_string(mid));
    }
    if (k_mid < target_kappa) {
      lo = mid;
      k_lo = k_mid;
    } else {
      hi = mid;
      k_hi = k_mid;
    }
  }
  const double x1 = (target_kappa - k_lo <= k_hi - target_kappa) ? lo : hi;

  Eigen::VectorXd full(m + 1);
  full(0) = x1;
  full.tail(m) = base;
  const auto mom = oracle_moments(full);
  return {(x1 - mom.mean) / mom.sigma(), x1, mom.kurtosis, iterations};
}

OutlierSearchResult search_outlier(BaseShape kind, std::int64_t n, double target_kappa) {
  if (!(target_kappa > nominal_kurtosis(kind))) {
    throw SearchError("search_outlier: target kurtosis must exceed the base shape's kurtosis");
  }
  return search_outlier(generate_base(kind, n - 1), target_kappa);
}

double ComparisonRow::statistic(BaseShape kind) const {
  switch (kind) {
    case BaseShape::bimodal: return bimodal;
    case BaseShape::trimodal: return trimodal;
    case BaseShape::two_thirds: return two_thirds;
    case BaseShape::uniform: return uniform;
  }
  return 0.0;
}

std::vector<ComparisonRow> comparison_table(std::span<const std::int64_t> base_counts, double target_kappa) {
  std::vector<ComparisonRow> rows;
  rows.reserve(base_counts.size());
  for (const auto m : base_counts) {
    const std::int64_t n = m + 1;
    ComparisonRow row{m, samuelson_bound<double>(n), 0, 0, 0, 0};
    row.bimodal = search_outlier(BaseShape::bimodal, n, target_kappa).a_statistic;
    row.trimodal = search_outlier(BaseShape::trimodal, n, target_kappa).a_statistic;
    row.two_thirds = search_outlier(BaseShape::two_thirds, n, target_kappa).a_statistic;
    row.uniform = search_outlier(BaseShape::uniform, n, target_kappa).a_statistic;
    rows.push_back(row);
  }
  return rows;
}

} // namespace kurtail
