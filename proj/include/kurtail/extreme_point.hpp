#pragma once

// Kurtosis-constrained extreme point.
//
// The extremal N-point configuration is one observation at a and the
// remaining N-1 split evenly between +b and -b, shifted so the population
// mean is 0 and the variance 1. Fixing the fourth moment to kappa leaves a
// quadratic in a^2:
//
//     (a^2)^2 - 2 r a^2 + G(N, kappa) = 0,   r = (N-1)/(N+1)
//     G(N, kappa) = (N (N-1)^2 - (N-1)^3 kappa) / ((N+1)(N-3))
//
// whose larger root gives the largest attainable (X_1 - mean)/sigma.
// Everything here is templated on the scalar so the identities can be
// re-checked in long double.

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "kurtail/errors.hpp"

namespace kurtail {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Closed interval of kurtosis values the extremal configuration attains for a given N.
template <typename Scalar>
struct KurtosisRange {
  Scalar kappa_min; ///< balanced two-point set, a^2 = (N-1)/(N+1)
  Scalar kappa_max; ///< Samuelson configuration, b = 0 and a = sqrt(N-1)

  bool contains(Scalar kappa) const { return kappa >= kappa_min && kappa <= kappa_max; }
};

template <typename Scalar>
struct ExtremePointSolution {
  Scalar n;
  Scalar kappa;
  Scalar g_value;
  Scalar a;         ///< (X_1 - mean) / sigma
  Scalar b_squared; ///< squared level of the bi-modal bulk before centering
  Scalar theta3;    ///< population skewness of the configuration
  Scalar samuelson_bound;
};

namespace detail {

template <typename Scalar>
void require_closed_form_n(Scalar n, const char* op) {
  if (!(n >= Scalar(5))) {
    throw DomainError(std::string(op) + ": N must be >= 5");
  }
}

// (N-1)^3 / ((N+1)(N-3)); the discriminant and the Samuelson gap are both
// this factor times the distance of kappa to the respective endpoint.
template <typename Scalar>
Scalar endpoint_scale(Scalar n) {
  const Scalar m = n - 1;
  return m * m * m / ((n + 1) * (n - 3));
}

} // namespace detail

template <typename Scalar = double>
KurtosisRange<Scalar> feasible_kurtosis_range(std::type_identity_t<Scalar> n) {
  detail::require_closed_form_n(n, "feasible_kurtosis_range");
  const Scalar n2 = n * n;
  return {(n2 + 3) / (n2 - 1), (n2 - 3 * n + 3) / (n - 1)};
}

/// G(N, kappa), the constant term of the quadratic in a^2.
template <typename Scalar = double>
Scalar quadratic_constant(std::type_identity_t<Scalar> n, std::type_identity_t<Scalar> kappa) {
  const Scalar m = n - 1;
  return (n * m * m - m * m * m * kappa) / ((n + 1) * (n - 3));
}

/// Residual of the quadratic at a given a^2; zero at the solution.
template <typename Scalar = double>
Scalar quadratic_residual(std::type_identity_t<Scalar> n, std::type_identity_t<Scalar> kappa,
                          std::type_identity_t<Scalar> a_squared) {
  const Scalar r = (n - 1) / (n + 1);
  return a_squared * a_squared - 2 * r * a_squared + quadratic_constant<Scalar>(n, kappa);
}

/// Third moment of the configuration as a function of N and a.
template <typename Scalar = double>
Scalar third_moment(std::type_identity_t<Scalar> n, std::type_identity_t<Scalar> a) {
  const Scalar m = n - 1;
  return -3 * a / m + (n + 1) * a * a * a / (m * m);
}

template <typename Scalar>
Scalar third_moment(const ExtremePointSolution<Scalar>& s) {
  return third_moment<Scalar>(s.n, s.a);
}

/// Solves for the extreme point, taking the positive root of the quadratic.
///
/// Throws DomainError for n < 5 and InfeasibleKurtosis when kappa lies
/// outside feasible_kurtosis_range(n).
template <typename Scalar = double>
ExtremePointSolution<Scalar> solve_extreme_point(std::type_identity_t<Scalar> n,
                                                 std::type_identity_t<Scalar> kappa) {
  detail::require_closed_form_n(n, "solve_extreme_point");
  const auto range = feasible_kurtosis_range<Scalar>(n);
  if (!range.contains(kappa)) {
    throw InfeasibleKurtosis(static_cast<double>(n), static_cast<double>(kappa),
                             static_cast<double>(range.kappa_min),
                             static_cast<double>(range.kappa_max));
  }
  using std::sqrt;
  const Scalar r = (n - 1) / (n + 1);
  const Scalar c = detail::endpoint_scale(n);
  // r^2 - G and (N-1-r)^2 - (r^2 - G), written without cancellation.
  const Scalar root_disc = sqrt(c * (kappa - range.kappa_min));
  const Scalar samuelson_gap = c * (range.kappa_max - kappa) / ((n - 1 - r) + root_disc);
  // Measure from whichever endpoint is closer; exact at both ends.
  const Scalar a_squared = root_disc < (n - 1 - r) / 2 ? r + root_disc : (n - 1) - samuelson_gap;

  ExtremePointSolution<Scalar> s;
  s.n = n;
  s.kappa = kappa;
  s.g_value = quadratic_constant<Scalar>(n, kappa);
  s.a = sqrt(a_squared);
  s.b_squared = n / ((n - 1) * (n - 1)) * samuelson_gap;
  s.theta3 = third_moment<Scalar>(n, s.a);
  s.samuelson_bound = sqrt(n - 1);
  return s;
}

template <typename Scalar = double>
Scalar samuelson_bound(std::int64_t n) {
  if (n < 2) {
    throw DomainError("samuelson_bound: N must be >= 2");
  }
  using std::sqrt;
  return sqrt(static_cast<Scalar>(n - 1));
}

enum class AsymptoticForm {
  minus_sign,     ///< sqrt(-1 + sqrt(1 + N(kappa-1)))
  sign_corrected, ///< sqrt(+1 + sqrt(1 + N(kappa-1))), the large-N limit of the positive root
};

template <typename Scalar = double>
Scalar asymptotic_a(std::type_identity_t<Scalar> n, std::type_identity_t<Scalar> kappa,
                    AsymptoticForm form) {
  detail::require_closed_form_n(n, "asymptotic_a");
  if (!(kappa > Scalar(1))) {
    throw DomainError("asymptotic_a: kappa must be > 1");
  }
  using std::sqrt;
  const Scalar inner = sqrt(1 + n * (kappa - 1));
  return form == AsymptoticForm::sign_corrected ? sqrt(1 + inner) : sqrt(inner - 1);
}

/// Leading-order growth [N (kappa - 1)]^(1/4).
template <typename Scalar = double>
Scalar leading_order_a(std::type_identity_t<Scalar> n, std::type_identity_t<Scalar> kappa) {
  using std::pow;
  return pow(n * (kappa - 1), Scalar(0.25));
}

/// Explicit centred dataset for odd N: one point at a, then alternating
/// b - a/(N-1) and -b - a/(N-1). Population mean 0, variance 1, kurtosis kappa.
template <typename Scalar = double>
Vector<Scalar> construct_distribution(std::int64_t n, std::type_identity_t<Scalar> kappa) {
  if (n % 2 == 0) {
    throw DomainError("construct_distribution: N must be odd; use solve_extreme_point for even N");
  }
  const auto s = solve_extreme_point<Scalar>(static_cast<Scalar>(n), kappa);
  using std::sqrt;
  const Scalar b = sqrt(s.b_squared);
  const Scalar shift = s.a / static_cast<Scalar>(n - 1);
  Vector<Scalar> x(n);
  x(0) = s.a;
  for (std::int64_t i = 1; i < n; ++i) {
    x(i) = (i % 2 == 1) ? b - shift : -b - shift;
  }
  return x;
}

} // namespace kurtail
