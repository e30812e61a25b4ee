#include "mibench/ingest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "mibench/harness.hpp"

namespace mibench {
namespace {

PriceSeries parse(const std::string& text) {
  std::istringstream in(text);
  return read_price_csv(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const IngestError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no IngestError for:\n" << text;
  return 0;
}

TEST(LoadPriceCsv, ThreeRowFixture) {
  const auto s = parse(
      "Date,Open,High,Low,Close,Adj Close,Volume\n"
      "2017-11-06,1,1,1,1,100,10\n"
      "2017-11-07,1,1,1,1,105,10\n"
      "2017-11-08,1,1,1,1,102,10\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.prices, (std::vector<double>{100, 105, 102}));
  EXPECT_EQ(format_iso_date(s.dates[2]), "2017-11-08");
}

TEST(LoadPriceCsv, CustomColumnsAndQuotes) {
  std::istringstream in("\"day\",\"close\"\n\"2020-01-02\",\"3.5\"\n2020-01-03,4\r\n");
  const auto s = read_price_csv(in, PriceColumns{"day", "close"});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.prices[0], 3.5);
}

TEST(LoadPriceCsv, Rejections) {
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-03,1\n2020-01-02,2\n"), 3u);  // shuffled
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-02,1\n2020-01-02,2\n"), 3u);  // duplicate
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-02,1\n2020-01-03,0\n"), 3u);  // non-positive
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-02,1\n2020-01-03,-4\n"), 3u);
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-02,1\n\n2020-01-03,null\n"), 4u);
  EXPECT_EQ(error_line("Date,Adj Close\n2020-01-02\n"), 2u);                  // short row
  EXPECT_EQ(error_line("Date,Adj Close\n2020-13-02,1\n"), 2u);                // bad date
  EXPECT_EQ(error_line("Date,Close\n2020-01-02,1\n"), 1u);                    // missing column
  EXPECT_THROW(parse(""), IngestError);
  EXPECT_THROW(parse("Date,Adj Close\n"), IngestError);
  EXPECT_THROW(load_price_csv("/nonexistent/prices.csv"), IngestError);
}

TEST(LoadPriceCsv, WriteThenReadIsExact) {
  PriceSeries s;
  s.dates = {parse_iso_date("1970-01-02"), parse_iso_date("1970-01-05"),
             parse_iso_date("2017-11-08")};
  s.prices = {0.1 + 0.2, 1.0 / 3.0, 12345.678901234567};
  std::stringstream io;
  write_price_csv(io, s);
  const auto back = read_price_csv(io);
  EXPECT_EQ(back.dates, s.dates);
  EXPECT_EQ(back.prices, s.prices);
}

TEST(LogReturns, Examples) {
  PriceSeries s;
  s.dates = {parse_iso_date("2020-01-01"), parse_iso_date("2020-01-02")};
  s.prices = {1.0, std::numbers::e};
  auto r = log_returns(s);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].value, 1.0, 1e-15);
  EXPECT_EQ(r[0].date, s.dates[1]);

  s.dates.push_back(parse_iso_date("2020-01-03"));
  s.prices = {100, 105, 102};
  r = log_returns(s);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].value, 0.04879016416943205, 1e-15);
  EXPECT_NEAR(r[1].value, -0.028987536873252406, 1e-15);

  s.prices = {7, 7, 7};
  for (const auto& v : log_returns(s)) EXPECT_EQ(v.value, 0.0);

  s.dates.resize(1);
  s.prices.resize(1);
  EXPECT_THROW(log_returns(s), std::invalid_argument);
}

std::vector<DatedValue> series(std::initializer_list<std::pair<const char*, double>> rows) {
  std::vector<DatedValue> out;
  for (const auto& [d, v] : rows) out.push_back({parse_iso_date(d), v});
  return out;
}

TEST(AlignPairs, InnerJoin) {
  const auto a = series({{"2020-01-02", 1}, {"2020-01-03", 2}, {"2020-01-06", 3}, {"2020-01-07", 4}});
  const auto b = series({{"2020-01-03", 20}, {"2020-01-06", 30}, {"2020-01-08", 50}});
  const Sample s = align_pairs(a, b);
  EXPECT_EQ(s.x, (std::vector<double>{2, 3}));
  EXPECT_EQ(s.y, (std::vector<double>{20, 30}));
  EXPECT_EQ(align_pairs(a, a).size(), a.size());
}

TEST(AlignPairs, TooFewCommonDates) {
  const auto a = series({{"2020-01-02", 1}, {"2020-01-03", 2}});
  const auto b = series({{"2020-01-06", 1}, {"2020-01-07", 2}});
  EXPECT_THROW(align_pairs(a, b), std::invalid_argument);
  const auto c = series({{"2020-01-03", 1}, {"2020-01-07", 2}});
  EXPECT_THROW(align_pairs(a, c), std::invalid_argument);
}

TEST(AlignPairs, PearsonMatchesSpreadsheetFormula) {
  PriceSeries pa, pb;
  pa.symbol = "A";
  pb.symbol = "B";
  double a = 50.0, b = 20.0;
  std::chrono::sys_days day = std::chrono::sys_days{parse_iso_date("2010-01-04")};
  for (int i = 0; i < 300; ++i) {
    a *= 1.0 + 0.01 * std::sin(0.37 * i);
    b *= 1.0 + 0.008 * std::sin(0.37 * i + 0.4) + 0.003 * std::cos(1.3 * i);
    pa.dates.emplace_back(day);
    pa.prices.push_back(a);
    if (i % 7 != 3) {
      pb.dates.emplace_back(day);
      pb.prices.push_back(b);
    }
    day += std::chrono::days{1};
  }
  const Sample s = align_pairs(log_returns(pa), log_returns(pb));
  // CORREL-style: (n Sxy - Sx Sy) / sqrt((n Sxx - Sx^2)(n Syy - Sy^2)).
  long double n = s.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sx += s.x[i];
    sy += s.y[i];
    sxx += static_cast<long double>(s.x[i]) * s.x[i];
    syy += static_cast<long double>(s.y[i]) * s.y[i];
    sxy += static_cast<long double>(s.x[i]) * s.y[i];
  }
  const long double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  EXPECT_NEAR(pearson_correlation(s), static_cast<double>(r), 1e-12);
}

}  // namespace
}  // namespace mibench
