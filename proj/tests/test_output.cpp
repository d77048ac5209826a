#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kurtail/errors.hpp"
#include "kurtail/output.hpp"

using namespace kurtail;

namespace {

OutputDocument sample() {
  OutputDocument doc;
  doc.title = "sample";
  doc.headers = {"N", "value", "label"};
  doc.add_row({std::int64_t{250}, 7.4641016, std::string("plain")});
  doc.add_row({std::int64_t{500}, CellError{"kurtosis infeasible"}, std::string("needs, \"quotes\"")});
  doc.notes = {"first note"};
  return doc;
}

} // namespace

TEST(FormatNumber, FixedAndShortest) {
  EXPECT_EQ(format_number(7.46410161514, 3), "7.464");
  EXPECT_EQ(format_number(2.0, 3), "2.000");
  EXPECT_EQ(format_number(-0.0001, 3), "0.000");
  EXPECT_EQ(format_number(0.1, kFullPrecision), "0.1");
  EXPECT_EQ(format_number(INFINITY, 3), "inf");
}

TEST(FormatNumber, FullPrecisionRoundTrips) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = mantissa(rng) * std::pow(10.0, exponent(rng));
    EXPECT_EQ(std::stod(format_number(v, kFullPrecision)), v);
  }
}

TEST(RenderCsv, RoundTripsThroughReader) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1e3);
  std::uniform_int_distribution<int> ch(0, 5);
  const char alphabet[] = {'a', ',', '"', '\n', ' ', 'z'};
  for (int trial = 0; trial < 50; ++trial) {
    OutputDocument doc;
    doc.headers = {"x", "text"};
    std::vector<std::pair<double, std::string>> want;
    for (int i = 0; i < 20; ++i) {
      std::string s;
      for (int j = 0; j < 6; ++j) s += alphabet[ch(rng)];
      const double v = gauss(rng);
      doc.add_row({v, s});
      want.emplace_back(v, s);
    }
    const auto records = parse_csv(render_csv(doc, kFullPrecision));
    ASSERT_EQ(records.size(), want.size() + 1);
    EXPECT_EQ(records[0], doc.headers);
    for (std::size_t i = 0; i < want.size(); ++i) {
      ASSERT_EQ(records[i + 1].size(), 2u);
      EXPECT_EQ(std::stod(records[i + 1][0]), want[i].first);
      EXPECT_EQ(records[i + 1][1], want[i].second);
    }
  }
}

TEST(RenderCsv, QuotingAndErrors) {
  const auto text = render_csv(sample());
  EXPECT_EQ(text, "N,value,label\n250,7.464,plain\n500,invalid: kurtosis infeasible,\"needs, \"\"quotes\"\"\"\n");
}

TEST(RenderJson, KeyOrderAndCells) {
  const auto text = render_json(sample());
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"title", "headers", "rows", "notes"}));
  EXPECT_EQ(j["rows"][0][0], 250);
  EXPECT_DOUBLE_EQ(j["rows"][0][1].get<double>(), 7.464);
  EXPECT_EQ(j["rows"][1][1]["invalid"], "kurtosis infeasible");
  EXPECT_EQ(j["notes"][0], "first note");
  const auto full = nlohmann::json::parse(render_json(sample(), kFullPrecision));
  EXPECT_EQ(full["rows"][0][1].get<double>(), 7.4641016);
}

TEST(RenderMarkdown, Layout) {
  const auto text = render_markdown(sample());
  EXPECT_EQ(text.rfind("### sample\n\n| N | value | label |\n| --- | --- | --- |\n", 0), 0u);
  EXPECT_NE(text.find("| 500 | invalid: kurtosis infeasible |"), std::string::npos);
  EXPECT_NE(text.find("\n- first note\n"), std::string::npos);
}

TEST(OutputDocument, RowWidthChecked) {
  OutputDocument doc;
  doc.headers = {"a", "b"};
  EXPECT_THROW(doc.add_row({1.0}), std::invalid_argument);
  doc.add_row({1.0, 2.0});
  EXPECT_FALSE(doc.has_errors());
  EXPECT_TRUE(sample().has_errors());
}

TEST(ParseOutputFormat, Names) {
  EXPECT_EQ(parse_output_format("json"), OutputFormat::json);
  EXPECT_EQ(parse_output_format("md"), OutputFormat::markdown);
  EXPECT_THROW(parse_output_format("xml"), LookupError);
}

TEST(ParseCsv, Rfc4180Cases) {
  const auto r = parse_csv("a,\"b,c\",\"d\"\"e\"\r\n\"multi\nline\",x\n");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_EQ(r[1], (std::vector<std::string>{"multi\nline", "x"}));
  EXPECT_THROW(parse_csv("\"open"), ParseError);
  EXPECT_THROW(parse_csv("ab\"c"), ParseError);
}
