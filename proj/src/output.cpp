#include "kurtail/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kurtail/errors.hpp"

namespace kurtail {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string cell_text(const Cell& cell, int precision) {
  return std::visit(overloaded{
                        [&](double v) { return format_number(v, precision); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](const std::string& s) { return s; },
                        [](const CellError& e) { return error_cell_text(e); },
                    },
                    cell);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_csv_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
}

std::string markdown_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  throw LookupError("unknown output format '" + std::string(name) + "'; expected csv, json or markdown");
}

void OutputDocument::add_row(std::vector<Cell> row) {
  if (row.size() != headers.size()) {
    throw std::invalid_argument("row width " + std::to_string(row.size()) + " differs from header width " +
                                std::to_string(headers.size()));
  }
  rows.push_back(std::move(row));
}

bool OutputDocument::has_errors() const {
  for (const auto& row : rows) {
    for (const auto& cell : row) {
      if (std::holds_alternative<CellError>(cell)) return true;
    }
  }
  return false;
}

std::string format_number(double value, int precision) {
  if (!std::isfinite(value)) {
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  }
  std::array<char, 512> buf{};
  const auto res = precision < 0
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), value)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed,
                                       precision);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("format_number: buffer too small");
  }
  std::string s(buf.data(), res.ptr);
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1); // no "-0.000"
  }
  return s;
}

std::string error_cell_text(const CellError& e) { return "invalid: " + e.reason; }

std::string render_csv(const OutputDocument& doc, int precision) {
  std::string out;
  append_csv_line(out, doc.headers);
  for (const auto& row : doc.rows) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& cell : row) fields.push_back(cell_text(cell, precision));
    append_csv_line(out, fields);
  }
  return out;
}

std::string render_json(const OutputDocument& doc, int precision) {
  using json = nlohmann::ordered_json;
  json rows = json::array();
  for (const auto& row : doc.rows) {
    json r = json::array();
    for (const auto& cell : row) {
      std::visit(overloaded{
                     [&](double v) {
                       if (!std::isfinite(v)) {
                         r.push_back(format_number(v, precision));
                       } else {
                         // Round through the decimal text so JSON shows the displayed value.
                         r.push_back(precision < 0 ? v : std::stod(format_number(v, precision)));
                       }
                     },
                     [&](std::int64_t v) { r.push_back(v); },
                     [&](const std::string& s) { r.push_back(s); },
                     [&](const CellError& e) { r.push_back(json{{"invalid", e.reason}}); },
                 },
                 cell);
    }
    rows.push_back(std::move(r));
  }
  json doc_json;
  doc_json["title"] = doc.title;
  doc_json["headers"] = doc.headers;
  doc_json["rows"] = std::move(rows);
  doc_json["notes"] = doc.notes;
  return doc_json.dump(2) + "\n";
}

std::string render_markdown(const OutputDocument& doc, int precision) {
  std::string out;
  if (!doc.title.empty()) {
    out += "### " + doc.title + "\n\n";
  }
  out += "|";
  for (const auto& h : doc.headers) out += " " + markdown_escape(h) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < doc.headers.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : doc.rows) {
    out += "|";
    for (const auto& cell : row) out += " " + markdown_escape(cell_text(cell, precision)) + " |";
    out += "\n";
  }
  if (!doc.notes.empty()) {
    out += "\n";
    for (const auto& n : doc.notes) out += "- " + n + "\n";
  }
  return out;
}

std::string render(const OutputDocument& doc, OutputFormat format, int precision) {
  switch (format) {
    case OutputFormat::csv: return render_csv(doc, precision);
    case OutputFormat::json: return render_json(doc, precision);
    case OutputFormat::markdown: return render_markdown(doc, precision);
  }
  return {};
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw ParseError(line, "quote inside unquoted field");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) {
    throw ParseError(line, "unterminated quoted field");
  }
  if (field_started || !field.empty() || !record.empty()) {
    end_record();
  }
  return records;
}

} // namespace kurtail
