#include "kurtail/return_series_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "kurtail/errors.hpp"
#include "kurtail/output.hpp"

namespace kurtail {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

// Line numbers in ParseError refer to physical lines; track them alongside records.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line_no++, line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

} // namespace

ParsedReturns parse_returns_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) {
    text.remove_prefix(3);
  }
  ParsedReturns out;
  std::vector<double> values;
  std::size_t width = 0;
  bool first = true;
  for (const auto& [line_no, line] : split_lines(text)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      auto records = parse_csv(line);
      fields = records.empty() ? std::vector<std::string>{} : std::move(records.front());
    } catch (const ParseError& e) {
      // parse_csv counts lines within this one line; report the file line instead.
      std::string_view msg = e.what();
      msg.remove_prefix(std::min(msg.size(), msg.find(": ") + 2));
      throw ParseError(line_no, std::string(msg));
    }
    if (fields.empty() || fields.size() > 2) {
      throw ParseError(line_no, "expected 'value' or 'date,value', got " + std::to_string(fields.size()) +
                                    " fields");
    }
    const auto value = parse_number(fields.back());
    if (first) {
      first = false;
      width = fields.size();
      if (!value) {
        out.had_header = true;
        out.header = fields;
        continue;
      }
    }
    if (fields.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    if (!value) {
      throw ParseError(line_no, "not a number: '" + fields.back() + "'");
    }
    values.push_back(*value);
    if (width == 2) {
      out.dates.emplace_back(trim(fields.front()));
    }
  }
  out.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return out;
}

ParsedReturns read_returns_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_returns_csv(ss.str());
}

ReturnSeries load_return_series(const std::filesystem::path& path) {
  auto parsed = read_returns_csv(path);
  return make_return_series(std::move(parsed.values), std::move(parsed.dates));
}

std::string write_returns_csv(const Eigen::Ref<const Eigen::VectorXd>& values,
                              const std::vector<std::string>& dates) {
  const bool with_dates = !dates.empty();
  std::string out = with_dates ? "date,value\n" : "value\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (with_dates) {
      out += dates.at(static_cast<std::size_t>(i)) + ",";
    }
    out += format_number(values(i), kFullPrecision) + "\n";
  }
  return out;
}

} // namespace kurtail
