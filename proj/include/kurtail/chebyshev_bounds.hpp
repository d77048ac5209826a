#pragma once

// Kurtosis-aware Chebyshev-type tail bounds, and their evaluation at the
// extreme point. Inputs are standardised (sigma = 1), so theta_j = E[X^j].
// Out-of-domain inputs throw BoundDomainError; nothing is clamped.

#include <cmath>
#include <optional>
#include <type_traits>

#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"

namespace kurtail {

enum class BoundMethod { even_moment, zelen, bhattacharyya };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::even_moment: return "even_moment";
    case BoundMethod::zelen: return "zelen";
    case BoundMethod::bhattacharyya: return "bhattacharyya";
  }
  return "unknown";
}

template <typename Scalar>
struct BoundEvaluation {
  BoundMethod method;
  Scalar threshold_t; ///< in standard deviations
  std::optional<Scalar> probability;
  std::optional<Scalar> one_in_n;
  bool valid = false;
  std::optional<BoundViolation> violation;

  static BoundEvaluation ok(BoundMethod m, Scalar t, Scalar p) {
    return {m, t, p, Scalar(1) / p, true, std::nullopt};
  }
  static BoundEvaluation rejected(BoundMethod m, Scalar t, BoundViolation v) {
    return {m, t, std::nullopt, std::nullopt, false, v};
  }
};

/// P(|X - mean| >= t * E[(X-mean)^(2k)]^(1/2k)) <= 1/t^(2k).
/// threshold_t carries t * moment^(1/2k). Bounds above 1 are vacuous and reported as 1.
template <typename Scalar = double>
BoundEvaluation<Scalar> even_moment_bound(std::type_identity_t<Scalar> t, int k,
                                          std::type_identity_t<Scalar> moment_2k) {
  if (!(t > Scalar(0)) || k < 1) {
    throw BoundDomainError(BoundViolation::non_positive_threshold);
  }
  if (!(moment_2k > Scalar(0))) {
    throw BoundDomainError(BoundViolation::non_positive_moment);
  }
  using std::pow;
  const Scalar p = pow(t, Scalar(-2 * k));
  const Scalar threshold = t * pow(moment_2k, Scalar(1) / Scalar(2 * k));
  return BoundEvaluation<Scalar>::ok(BoundMethod::even_moment, threshold, p < Scalar(1) ? p : Scalar(1));
}

/// k = 2, t = N^(1/4): threshold (kappa N)^(1/4) at probability 1/N.
template <typename Scalar = double>
BoundEvaluation<Scalar> even_moment_endpoint(std::type_identity_t<Scalar> n,
                                             std::type_identity_t<Scalar> kappa) {
  using std::pow;
  return even_moment_bound<Scalar>(pow(n, Scalar(0.25)), 2, kappa);
}

template <typename Scalar = double>
std::optional<BoundViolation> zelen_domain_check(std::type_identity_t<Scalar> t,
                                                 std::type_identity_t<Scalar> theta3,
                                                 std::type_identity_t<Scalar> theta4) {
  using std::sqrt;
  if (t < (theta3 + sqrt(theta3 * theta3 + 4)) / 2) {
    return BoundViolation::zelen_threshold_below_domain;
  }
  if (!(theta4 - theta3 * theta3 - 1 > Scalar(0))) {
    return BoundViolation::zelen_moment_infeasible;
  }
  return std::nullopt;
}

/// Zelen's two-sided bound from the third and fourth standardised moments.
template <typename Scalar = double>
BoundEvaluation<Scalar> zelen_bound(std::type_identity_t<Scalar> t, std::type_identity_t<Scalar> theta3,
                                    std::type_identity_t<Scalar> theta4) {
  if (auto v = zelen_domain_check<Scalar>(t, theta3, theta4)) {
    throw BoundDomainError(*v);
  }
  const Scalar q = t * t - t * theta3 - 1;
  const Scalar denom = 1 + t * t + q * q / (theta4 - theta3 * theta3 - 1);
  return BoundEvaluation<Scalar>::ok(BoundMethod::zelen, t, Scalar(1) / denom);
}

template <typename Scalar = double>
std::optional<BoundViolation> bhattacharyya_domain_check(std::type_identity_t<Scalar> t,
                                                         std::type_identity_t<Scalar> theta3,
                                                         std::type_identity_t<Scalar> kappa) {
  if (!(t * t - t * theta3 - 1 > Scalar(0))) {
    return BoundViolation::bhattacharyya_threshold_domain;
  }
  if (!(kappa - theta3 * theta3 - 1 > Scalar(0))) {
    return BoundViolation::bhattacharyya_moment_infeasible;
  }
  return std::nullopt;
}

/// Bhattacharyya's one-sided bound on P(X >= t sigma).
template <typename Scalar = double>
BoundEvaluation<Scalar> bhattacharyya_bound(std::type_identity_t<Scalar> t,
                                            std::type_identity_t<Scalar> theta3,
                                            std::type_identity_t<Scalar> kappa) {
  if (auto v = bhattacharyya_domain_check<Scalar>(t, theta3, kappa)) {
    throw BoundDomainError(*v);
  }
  const Scalar d = kappa - theta3 * theta3 - 1;
  const Scalar q = t * t - t * theta3 - 1;
  return BoundEvaluation<Scalar>::ok(BoundMethod::bhattacharyya, t, d / (d * (1 + t * t) + q));
}

/// Evaluates a bound at t = a(N, kappa), theta3 from the configuration, theta4 = kappa.
/// Domain failures come back as a rejected evaluation rather than an exception,
/// so grids can mark individual cells.
template <typename Scalar = double>
BoundEvaluation<Scalar> bound_at_extreme_point(BoundMethod method, std::type_identity_t<Scalar> n,
                                               std::type_identity_t<Scalar> kappa) {
  if (method == BoundMethod::even_moment) {
    return even_moment_endpoint<Scalar>(n, kappa);
  }
  const auto s = solve_extreme_point<Scalar>(n, kappa);
  try {
    return method == BoundMethod::zelen ? zelen_bound<Scalar>(s.a, s.theta3, kappa)
                                        : bhattacharyya_bound<Scalar>(s.a, s.theta3, kappa);
  } catch (const BoundDomainError& e) {
    return BoundEvaluation<Scalar>::rejected(method, s.a, e.violation());
  }
}

/// Smallest integer N at which a^2 - a theta3 - 1 > 0 holds for the extreme
/// point, scanning upward from the first N where kappa is feasible.
/// The inequality is exactly 0 at kappa_max (the two-point Samuelson set),
/// so in practice this is the first N with kappa strictly inside the range.
inline std::int64_t min_n_for_bhattacharyya_validity(double kappa, std::int64_t ceiling = 100'000'000) {
  if (!(kappa > 1.0)) {
    throw DomainError("min_n_for_bhattacharyya_validity: kappa must be > 1");
  }
  for (std::int64_t n = 5; n <= ceiling; ++n) {
    const auto range = feasible_kurtosis_range<double>(static_cast<double>(n));
    if (!range.contains(kappa)) {
      continue;
    }
    const auto s = solve_extreme_point<double>(static_cast<double>(n), kappa);
    if (s.a * s.a - s.a * s.theta3 - 1 > 0) {
      return n;
    }
  }
  throw SearchError("min_n_for_bhattacharyya_validity: no valid N below ceiling");
}

} // namespace kurtail
