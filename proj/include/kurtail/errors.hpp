#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kurtail {

/// Argument outside the mathematical domain of an operation (n < 5, p outside (0,1), ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Kurtosis outside the range the extremal configuration can attain for this N.
class InfeasibleKurtosis : public DomainError {
public:
  InfeasibleKurtosis(double n, double kappa, double kappa_min, double kappa_max)
      : DomainError(describe(n, kappa, kappa_min, kappa_max)), n_(n), kappa_(kappa),
        kappa_min_(kappa_min), kappa_max_(kappa_max) {}

  double n() const noexcept { return n_; }
  double kappa() const noexcept { return kappa_; }
  double kappa_min() const noexcept { return kappa_min_; }
  double kappa_max() const noexcept { return kappa_max_; }

private:
  static std::string describe(double n, double kappa, double lo, double hi) {
    std::ostringstream os;
    os.precision(10);
    os << "kurtosis " << kappa << " is infeasible for N = " << n << "; feasible range is [" << lo
       << ", " << hi << "]";
    return os.str();
  }

  double n_, kappa_, kappa_min_, kappa_max_;
};

/// Moments that require a positive variance were requested from constant data.
class DegenerateData : public DomainError {
public:
  using DomainError::DomainError;
};

/// Which printed precondition of a Chebyshev-type inequality was violated.
enum class BoundViolation {
  non_positive_threshold,
  non_positive_moment,
  zelen_threshold_below_domain,    // t < (theta3 + sqrt(theta3^2 + 4)) / 2
  zelen_moment_infeasible,         // theta4 - theta3^2 - 1 <= 0
  bhattacharyya_threshold_domain,  // t^2 - t theta3 - 1 <= 0
  bhattacharyya_moment_infeasible, // kappa - theta3^2 - 1 <= 0
};

inline const char* to_string(BoundViolation v) {
  switch (v) {
    case BoundViolation::non_positive_threshold: return "threshold must be positive";
    case BoundViolation::non_positive_moment: return "moment must be positive";
    case BoundViolation::zelen_threshold_below_domain:
      return "t below (theta3 + sqrt(theta3^2 + 4))/2";
    case BoundViolation::zelen_moment_infeasible: return "theta4 - theta3^2 - 1 <= 0";
    case BoundViolation::bhattacharyya_threshold_domain: return "t^2 - t*theta3 - 1 <= 0";
    case BoundViolation::bhattacharyya_moment_infeasible: return "kappa - theta3^2 - 1 <= 0";
  }
  return "unknown";
}

class BoundDomainError : public DomainError {
public:
  explicit BoundDomainError(BoundViolation v) : DomainError(to_string(v)), violation_(v) {}
  BoundViolation violation() const noexcept { return violation_; }

private:
  BoundViolation violation_;
};

/// Key not present in an embedded table.
class LookupError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Numerical search could not bracket or converge.
class SearchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace kurtail
