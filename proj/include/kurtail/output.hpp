#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kurtail {

/// A cell whose computation was rejected (infeasible kurtosis, bound outside its domain, ...).
struct CellError {
  std::string reason;
  bool operator==(const CellError&) const = default;
};

using Cell = std::variant<double, std::int64_t, std::string, CellError>;

enum class OutputFormat { csv, json, markdown };

OutputFormat parse_output_format(std::string_view name);

/// Precision value meaning "shortest representation that round-trips".
inline constexpr int kFullPrecision = -1;
inline constexpr int kDefaultPrecision = 3;

struct OutputDocument {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;

  /// Throws std::invalid_argument when the row width differs from the header width.
  void add_row(std::vector<Cell> row);
  bool has_errors() const;
};

/// Fixed notation with `precision` decimals, or shortest round-trip when precision < 0.
std::string format_number(double value, int precision);

/// CSV: header line then rows, RFC 4180 quoting, CRLF-free ("\n" line ends).
/// Title and notes are not part of the CSV encoding.
std::string render_csv(const OutputDocument& doc, int precision = kDefaultPrecision);
/// JSON object with keys in the order title, headers, rows, notes.
std::string render_json(const OutputDocument& doc, int precision = kDefaultPrecision);
std::string render_markdown(const OutputDocument& doc, int precision = kDefaultPrecision);
std::string render(const OutputDocument& doc, OutputFormat format, int precision = kDefaultPrecision);

/// Text of an error cell in CSV and markdown.
std::string error_cell_text(const CellError& e);

/// RFC 4180 reader: quoted fields, doubled quotes, embedded commas and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

} // namespace kurtail
