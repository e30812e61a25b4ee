#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mibench/sampling.hpp"

namespace mibench {

using Date = std::chrono::year_month_day;

/// Daily closing prices with strictly increasing dates and positive prices.
struct PriceSeries {
  std::string symbol;
  std::vector<Date> dates;
  std::vector<double> prices;

  std::size_t size() const noexcept { return dates.size(); }
};

struct DatedValue {
  Date date;
  double value;
};

/// Header names to read. The defaults match Yahoo-style downloads.
struct PriceColumns {
  std::string date = "Date";
  std::string price = "Adj Close";
};

/// Malformed input. `line()` is 1-based, or 0 when not tied to a line.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Date parse_iso_date(std::string_view text);
std::string format_iso_date(Date date);

PriceSeries read_price_csv(std::istream& in, const PriceColumns& columns = {},
                           std::string symbol = {});
PriceSeries load_price_csv(const std::filesystem::path& path, const PriceColumns& columns = {});
void write_price_csv(std::ostream& out, const PriceSeries& series,
                     const PriceColumns& columns = {});

/// r_t = ln(P_t / P_{t-1}), dated at t. Requires at least two prices.
std::vector<DatedValue> log_returns(const PriceSeries& series);

/// Inner join on date in chronological order; x from `a`, y from `b`.
/// Throws std::invalid_argument when fewer than two dates match.
Sample align_pairs(std::span<const DatedValue> a, std::span<const DatedValue> b);

}  // namespace mibench
