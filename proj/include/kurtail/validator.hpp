#pragma once

// Stress-model validation: a tail factor k passes for a history of N
// observations with kurtosis kappa when k >= a(N, kappa), i.e. no observation
// in any such history can exceed the shock.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace kurtail {

inline constexpr std::int64_t kDefaultHistoryCeiling = 1'000'000'000;
inline constexpr double kDefaultDaysPerYear = 250.0;

/// Largest history length for which a tail factor still dominates a(N, kappa).
struct MaxSafeHistory {
  enum class Kind {
    bounded,   ///< n is the breach horizon
    unbounded, ///< no violation found up to the ceiling
    none,      ///< violated already at the smallest N where kappa is feasible
  };
  Kind kind;
  std::int64_t n; ///< breach horizon when bounded, the ceiling when unbounded, feasibility floor - 1 when none

  bool bounded() const { return kind == Kind::bounded; }
};

std::string to_string(const MaxSafeHistory& h);

struct ModelVerdict {
  double tail_factor;
  double history_n;
  double kappa;
  double required_a;
  double margin; ///< tail_factor - required_a
  bool pass;
  MaxSafeHistory max_safe_history;
  bool kurtosis_feasible = true; ///< false when required_a fell back to sqrt(N-1)
};

/// a(N, kappa); throws InfeasibleKurtosis outside the feasible range.
double required_tail_factor(double history_n, double kappa);

/// Smallest integer N >= 5 at which kappa is feasible.
std::int64_t feasibility_floor(double kappa);

MaxSafeHistory max_safe_history(double tail_factor, double kappa,
                                std::int64_t ceiling = kDefaultHistoryCeiling);

ModelVerdict validate_model(double tail_factor, double history_n, double kappa,
                            std::int64_t ceiling = kDefaultHistoryCeiling);

/// Looks up the published BLR tail factor and validates it.
ModelVerdict validate_blr(std::string_view g_inverse_label, double kappa, double history_n,
                          std::int64_t ceiling = kDefaultHistoryCeiling);

double history_in_years(std::int64_t n, double days_per_year = kDefaultDaysPerYear);

/// Daily returns with population statistics (divisor N, non-excess kurtosis).
struct ReturnSeries {
  Eigen::VectorXd values;
  std::vector<std::string> dates; ///< empty, or one per value
  std::int64_t n = 0;
  double mean = 0;
  double sigma = 0;
  double skewness = 0;
  double kurtosis = 0;
  double max_abs_deviation_in_sigmas = 0;
};

/// Computes statistics; throws DomainError for n < 5 and DegenerateData for zero variance.
ReturnSeries make_return_series(Eigen::VectorXd values, std::vector<std::string> dates = {});

struct EmpiricalReport {
  ModelVerdict verdict;
  bool historical_breach;    ///< some observation already exceeds the shock
  bool theoretical_exposure; ///< tail_factor < required_a
};

EmpiricalReport empirical_validate(const ReturnSeries& series, double tail_factor,
                                   std::int64_t ceiling = kDefaultHistoryCeiling);

} // namespace kurtail
