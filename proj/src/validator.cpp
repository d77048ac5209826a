#include "kurtail/validator.hpp"

#include <cmath>
#include <utility>

#include "kurtail/distributions.hpp"
#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"
#include "kurtail/moments.hpp"

namespace kurtail {

namespace {

bool feasible_at(std::int64_t n, double kappa) {
  return feasible_kurtosis_range<double>(static_cast<double>(n)).contains(kappa);
}

double a_at(std::int64_t n, double kappa) {
  return solve_extreme_point<double>(static_cast<double>(n), kappa).a;
}

} // namespace

std::string to_string(const MaxSafeHistory& h) {
  switch (h.kind) {
    case MaxSafeHistory::Kind::bounded: return std::to_string(h.n);
    case MaxSafeHistory::Kind::unbounded: return "unbounded (> " + std::to_string(h.n) + ")";
    case MaxSafeHistory::Kind::none: return "none";
  }
  return "?";
}

double required_tail_factor(double history_n, double kappa) {
  return solve_extreme_point<double>(history_n, kappa).a;
}

std::int64_t feasibility_floor(double kappa) {
  if (!(kappa > 1.0)) {
    throw DomainError("feasibility_floor: kappa must be > 1");
  }
  // Both endpoints move outward with N, so feasibility is monotone in N.
  std::int64_t lo = 4;
  std::int64_t hi = 5;
  while (!feasible_at(hi, kappa)) {
    lo = hi;
    hi *= 2;
    if (hi > (std::int64_t{1} << 60)) {
      throw SearchError("feasibility_floor: kappa too close to 1");
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (feasible_at(mid, kappa) ? hi : lo) = mid;
  }
  return hi;
}

MaxSafeHistory max_safe_history(double tail_factor, double kappa, std::int64_t ceiling) {
  if (!(tail_factor > 0.0)) {
    throw DomainError("max_safe_history: tail factor must be positive");
  }
  const std::int64_t floor = feasibility_floor(kappa);
  if (ceiling < floor) {
    throw DomainError("max_safe_history: ceiling below the feasibility floor");
  }
  if (a_at(floor, kappa) > tail_factor) {
    return {MaxSafeHistory::Kind::none, floor - 1};
  }
  if (a_at(ceiling, kappa) <= tail_factor) {
    return {MaxSafeHistory::Kind::unbounded, ceiling};
  }
  // Invariant: a(lo) <= k < a(hi); a is increasing in N.
  std::int64_t lo = floor;
  std::int64_t hi = ceiling;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (a_at(mid, kappa) <= tail_factor ? lo : hi) = mid;
  }
  return {MaxSafeHistory::Kind::bounded, lo};
}

ModelVerdict validate_model(double tail_factor, double history_n, double kappa, std::int64_t ceiling) {
  if (!(tail_factor > 0.0)) {
    throw DomainError("validate_model: tail factor must be positive");
  }
  const double required = required_tail_factor(history_n, kappa);
  const double margin = tail_factor - required;
  return {tail_factor, history_n, kappa, required, margin, margin >= 0.0,
          max_safe_history(tail_factor, kappa, ceiling), true};
}

ModelVerdict validate_blr(std::string_view g_inverse_label, double kappa, double history_n,
                          std::int64_t ceiling) {
  return validate_model(blr_tail_factor(g_inverse_label, kappa), history_n, kappa, ceiling);
}

double history_in_years(std::int64_t n, double days_per_year) {
  if (!(days_per_year > 0.0)) {
    throw DomainError("days per year must be positive");
  }
  return static_cast<double>(n) / days_per_year;
}

ReturnSeries make_return_series(Eigen::VectorXd values, std::vector<std::string> dates) {
  if (values.size() < 5) {
    throw DomainError("too few observations: need at least 5, got " + std::to_string(values.size()));
  }
  if (!dates.empty() && static_cast<Eigen::Index>(dates.size()) != values.size()) {
    throw DomainError("dates and values differ in length");
  }
  const auto m = oracle_moments(values);
  ReturnSeries s;
  s.n = values.size();
  s.mean = m.mean;
  s.sigma = m.sigma();
  s.skewness = m.skewness;
  s.kurtosis = m.kurtosis;
  s.max_abs_deviation_in_sigmas = (values.array() - m.mean).abs().maxCoeff() / s.sigma;
  s.values = std::move(values);
  s.dates = std::move(dates);
  return s;
}

EmpiricalReport empirical_validate(const ReturnSeries& series, double tail_factor, std::int64_t ceiling) {
  if (!(tail_factor > 0.0)) {
    throw DomainError("empirical_validate: tail factor must be positive");
  }
  if (series.n < 5 || !(series.sigma > 0.0)) {
    throw DomainError("empirical_validate: series needs n >= 5 and positive sigma");
  }
  const double n = static_cast<double>(series.n);
  const auto range = feasible_kurtosis_range<double>(n);
  const bool feasible = range.contains(series.kurtosis);
  // Outside the closed-form range sqrt(N-1) still bounds every observation.
  const double required = feasible ? solve_extreme_point<double>(n, series.kurtosis).a : std::sqrt(n - 1.0);

  ModelVerdict v;
  v.tail_factor = tail_factor;
  v.history_n = n;
  v.kappa = series.kurtosis;
  v.required_a = required;
  v.margin = tail_factor - required;
  v.kurtosis_feasible = feasible;
  v.max_safe_history = series.kurtosis > 1.0 ? max_safe_history(tail_factor, series.kurtosis, ceiling)
                                             : MaxSafeHistory{MaxSafeHistory::Kind::none, 0};

  EmpiricalReport report{v, tail_factor < series.max_abs_deviation_in_sigmas, tail_factor < required};
  report.verdict.pass = v.margin >= 0.0 && !report.historical_breach;
  return report;
}

} // namespace kurtail
