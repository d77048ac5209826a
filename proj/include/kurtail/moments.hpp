#pragma once

#include <cmath>

#include <Eigen/Core>

#include "kurtail/errors.hpp"

namespace kurtail {

/// Population moments (divisor N). Kurtosis is non-excess: a normal gives 3.
template <typename Scalar>
struct Moments {
  Scalar mean;
  Scalar variance;
  Scalar skewness;
  Scalar kurtosis;

  Scalar sigma() const { return std::sqrt(variance); }
};

/// Brute-force two-pass moments over an explicit dataset.
template <typename Derived>
Moments<typename Derived::Scalar> oracle_moments(const Eigen::DenseBase<Derived>& data) {
  using Scalar = typename Derived::Scalar;
  const auto n = data.size();
  if (n == 0) {
    throw DomainError("oracle_moments: empty data");
  }
  // Constant data can still leave a rounding-level m2 after centering; test it directly.
  if (data.derived().maxCoeff() == data.derived().minCoeff()) {
    throw DegenerateData("oracle_moments: zero variance, skewness and kurtosis undefined");
  }
  const Scalar mean = data.derived().mean();
  const auto centered = (data.derived().array() - mean).eval();
  const auto sq = centered.square().eval();
  const Scalar m2 = sq.mean();
  if (!(m2 > Scalar(0))) {
    throw DegenerateData("oracle_moments: zero variance, skewness and kurtosis undefined");
  }
  const Scalar m3 = (sq * centered).mean();
  const Scalar m4 = sq.square().mean();
  const Scalar sigma = std::sqrt(m2);
  return {mean, m2, m3 / (m2 * sigma), m4 / (m2 * m2)};
}

/// Largest |x - mean| / sigma over the dataset.
template <typename Derived>
typename Derived::Scalar max_abs_deviation_in_sigmas(const Eigen::DenseBase<Derived>& data) {
  const auto m = oracle_moments(data);
  return (data.derived().array() - m.mean).abs().maxCoeff() / m.sigma();
}

} // namespace kurtail
