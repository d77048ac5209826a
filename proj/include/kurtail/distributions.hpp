#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace kurtail {

// Normal and Student-t tail factors. A tail factor for a 1-in-N event is the
// one-sided upper quantile at p = 1 - 1/N. Student-t quantiles are raw (not
// rescaled to unit variance).

double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x);
double normal_quantile(double p);

/// Regularised incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

double student_t_pdf(double t, double dof);
double student_t_cdf(double t, double dof);
/// Upper tail P(T > t).
double student_t_sf(double t, double dof);
double student_t_quantile(double p, double dof);

enum class KurtosisConvention { raw, excess };

/// 3 + 6/(nu-4) (raw) or 6/(nu-4) (excess); infinite for nu <= 4.
double student_t_kurtosis(int dof, KurtosisConvention convention);

/// p = 1 - 1/horizon for a 1-in-horizon event.
double horizon_probability(double horizon_n);

struct NormalModel {};
struct StudentTModel {
  int dof;
};

/// Quantile at 1 - 1/horizon_n for the chosen model.
double tail_factor(double horizon_n, NormalModel);
double tail_factor(double horizon_n, StudentTModel model);

// Brace-Lauer-Rado stochastic-volatility model: instantaneous kurtosis
// kappa = 3 exp(h^2 / 2g).

double blr_kurtosis(double h, double g);
double blr_h_from_kurtosis(double kappa, double g);

struct BlrParameters {
  double g;     ///< mean-reversion rate, 1/years
  double h;     ///< vol-of-vol
  double kappa; ///< instantaneous kurtosis
  double rho;   ///< skew correlation; metadata only
  std::string g_inverse_label;
};

/// Builds parameters from a g^-1 label ("1m".."6m") and kurtosis.
BlrParameters blr_parameters(std::string_view g_inverse_label, double kappa, double rho = 0.5);

/// One row of the published BLR tail-factor table (1-day holding period, rho = 0.5,
/// survival probability 0.9997).
struct BlrTableEntry {
  std::string_view g_inverse_label;
  int g_inverse_months;
  double kappa;
  double tail_factor;
};

std::span<const BlrTableEntry> blr_tail_factor_table();
/// Throws LookupError listing the available keys.
double blr_tail_factor(std::string_view g_inverse_label, double kappa);

} // namespace kurtail
