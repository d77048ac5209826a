#include "kurtail/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kurtail/errors.hpp"

namespace kurtail {

namespace {

void require_open_unit(double p, const char* op) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(op) + ": probability must lie in (0, 1)");
  }
}

void require_dof(double dof, const char* op) {
  if (!(dof >= 1.0) || !std::isfinite(dof)) {
    throw DomainError(std::string(op) + ": degrees of freedom must be >= 1");
  }
}

// Acklam's rational approximation to the lower-tail normal quantile, |rel err| < 1.2e-9.
double acklam_lower(double p) {
  constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                          1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                          6.680131188771972e+01,  -1.328068155288572e+01};
  constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                          -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                          3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int max_iter = 200000;
  constexpr double eps = 1e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) {
      return h;
    }
  }
  throw SearchError("incomplete_beta: continued fraction did not converge");
}

// I_x(a, b) given both x and y = 1 - x, so callers can avoid forming 1 - x.
double incomplete_beta_xy(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

// P(T > t) for t >= 0.
double student_t_upper(double t, double dof) {
  const double t2 = t * t;
  const double x = dof / (dof + t2);
  const double y = t2 / (dof + t2);
  return 0.5 * incomplete_beta_xy(0.5 * dof, 0.5, x, y);
}

// Solves P(T > t) = q for t > 0 with q < 0.5: geometric bracketing, then
// Newton on log P(T > t) safeguarded by bisection.
double student_t_upper_quantile(double q, double dof) {
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_upper(hi, dof) > q) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw SearchError("student_t_quantile: could not bracket");
    }
  }
  const double log_q = std::log(q);
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double sf = student_t_upper(t, dof);
    const double f = std::log(sf) - log_q;
    if (f > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = -student_t_pdf(t, dof) / sf;
    double next = t - f / slope;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    t = next;
  }
  return t;
}

} // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  require_open_unit(p, "normal_quantile");
  if (p == 0.5) {
    return 0.0;
  }
  // Work in the lower tail where the CDF carries full relative precision.
  const bool upper = p > 0.5;
  const double q = upper ? 1.0 - p : p;
  double x = acklam_lower(q);
  for (int i = 0; i < 3; ++i) {
    // Halley step on Phi(x) - q.
    const double e = normal_cdf(x) - q;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return upper ? -x : x;
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw DomainError("incomplete_beta: shape parameters must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("incomplete_beta: x must lie in [0, 1]");
  }
  return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double student_t_pdf(double t, double dof) {
  require_dof(dof, "student_t_pdf");
  const double log_norm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                          0.5 * std::log(dof * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (dof + 1.0) * std::log1p(t * t / dof));
}

double student_t_sf(double t, double dof) {
  require_dof(dof, "student_t_sf");
  return t >= 0.0 ? student_t_upper(t, dof) : 1.0 - student_t_upper(-t, dof);
}

double student_t_cdf(double t, double dof) {
  require_dof(dof, "student_t_cdf");
  return t >= 0.0 ? 1.0 - student_t_upper(t, dof) : student_t_upper(-t, dof);
}

double student_t_quantile(double p, double dof) {
  require_open_unit(p, "student_t_quantile");
  require_dof(dof, "student_t_quantile");
  if (p == 0.5) {
    return 0.0;
  }
  return p > 0.5 ? student_t_upper_quantile(1.0 - p, dof) : -student_t_upper_quantile(p, dof);
}

double student_t_kurtosis(int dof, KurtosisConvention convention) {
  if (dof <= 4) {
    throw DomainError("student_t_kurtosis: kurtosis is infinite for dof <= 4");
  }
  const double excess = 6.0 / (dof - 4);
  return convention == KurtosisConvention::excess ? excess : 3.0 + excess;
}

double horizon_probability(double horizon_n) {
  if (!(horizon_n >= 2.0)) {
    throw DomainError("horizon must be >= 2");
  }
  return 1.0 - 1.0 / horizon_n;
}

double tail_factor(double horizon_n, NormalModel) {
  return normal_quantile(horizon_probability(horizon_n));
}

double tail_factor(double horizon_n, StudentTModel model) {
  return student_t_quantile(horizon_probability(horizon_n), model.dof);
}

double blr_kurtosis(double h, double g) {
  if (!(g > 0.0)) {
    throw DomainError("blr_kurtosis: g must be positive");
  }
  if (!(h >= 0.0)) {
    throw DomainError("blr_kurtosis: h must be non-negative");
  }
  return 3.0 * std::exp(h * h / (2.0 * g));
}

double blr_h_from_kurtosis(double kappa, double g) {
  if (!(g > 0.0)) {
    throw DomainError("blr_h_from_kurtosis: g must be positive");
  }
  if (!(kappa > 3.0)) {
    throw DomainError("blr_h_from_kurtosis: the model cannot produce kurtosis <= 3");
  }
  return std::sqrt(2.0 * g * std::log(kappa / 3.0));
}

} // namespace kurtail
