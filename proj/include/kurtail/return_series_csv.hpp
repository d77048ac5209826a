#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "kurtail/validator.hpp"

namespace kurtail {

/// Raw contents of a return-series CSV before statistics are computed.
///
/// Format: UTF-8, one observation per line, either `value` or `date,value`.
/// An optional single header line is recognised by a non-numeric value field.
/// Decimal point only, no thousands separators. Blank lines are skipped.
struct ParsedReturns {
  Eigen::VectorXd values;
  std::vector<std::string> dates; ///< empty for single-column files
  bool had_header = false;
  std::vector<std::string> header;
};

/// Throws ParseError with the 1-based line number of the first bad line.
ParsedReturns parse_returns_csv(std::string_view text);
ParsedReturns read_returns_csv(const std::filesystem::path& path);

/// Parses and computes statistics in one step.
ReturnSeries load_return_series(const std::filesystem::path& path);

/// Writes `value` or `date,value` lines at full precision, with a header.
std::string write_returns_csv(const Eigen::Ref<const Eigen::VectorXd>& values,
                              const std::vector<std::string>& dates = {});

} // namespace kurtail
