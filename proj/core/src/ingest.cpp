#include "mibench/ingest.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "mibench/serialize.hpp"

namespace mibench {

IngestError::IngestError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

}  // namespace

Date parse_iso_date(std::string_view text) {
  text = trim(text);
  int y = 0;
  unsigned m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_number(text.substr(0, 4), y) ||
      !parse_number(text.substr(5, 2), m) || !parse_number(text.substr(8, 2), d)) {
    throw std::invalid_argument("expected an ISO-8601 date (YYYY-MM-DD), got '" +
                                std::string(text) + "'");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
  return date;
}

std::string format_iso_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

PriceSeries read_price_csv(std::istream& in, const PriceColumns& columns, std::string symbol) {
  PriceSeries series;
  series.symbol = std::move(symbol);

  std::string line;
  std::size_t line_no = 0;
  std::size_t date_col = 0, price_col = 0, width = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);

    if (!have_header) {
      bool found_date = false, found_price = false;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        const auto name = trim(fields[c]);
        if (name == columns.date) { date_col = c; found_date = true; }
        if (name == columns.price) { price_col = c; found_price = true; }
      }
      if (!found_date || !found_price) {
        throw IngestError("header must contain columns '" + columns.date + "' and '" +
                              columns.price + "'", line_no);
      }
      width = fields.size();
      have_header = true;
      continue;
    }

    if (fields.size() != width) {
      throw IngestError("expected " + std::to_string(width) + " fields, found " +
                            std::to_string(fields.size()), line_no);
    }
    Date date;
    try {
      date = parse_iso_date(fields[date_col]);
    } catch (const std::invalid_argument& e) {
      throw IngestError(e.what(), line_no);
    }
    double price = 0.0;
    if (!parse_number(fields[price_col], price) || !std::isfinite(price)) {
      throw IngestError("unparsable price '" + fields[price_col] + "'", line_no);
    }
    if (!(price > 0.0)) throw IngestError("price must be positive", line_no);
    if (!series.dates.empty()) {
      if (date == series.dates.back()) {
        throw IngestError("duplicate date " + format_iso_date(date), line_no);
      }
      if (date < series.dates.back()) {
        throw IngestError("dates must be strictly increasing (" + format_iso_date(date) +
                              " follows " + format_iso_date(series.dates.back()) + ")", line_no);
      }
    }
    series.dates.push_back(date);
    series.prices.push_back(price);
  }
  if (!have_header) throw IngestError("empty price file", 0);
  if (series.dates.empty()) throw IngestError("price file has a header but no rows", 0);
  return series;
}

PriceSeries load_price_csv(const std::filesystem::path& path, const PriceColumns& columns) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string(), 0);
  try {
    return read_price_csv(in, columns, path.stem().string());
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what(), e.line());
  }
}

void write_price_csv(std::ostream& out, const PriceSeries& series, const PriceColumns& columns) {
  out << columns.date << ',' << columns.price << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_iso_date(series.dates[i]) << ',' << format_real(series.prices[i]) << '\n';
  }
}

std::vector<DatedValue> log_returns(const PriceSeries& series) {
  if (series.size() < 2) throw std::invalid_argument("log_returns: need at least two prices");
  std::vector<DatedValue> out;
  out.reserve(series.size() - 1);
  for (std::size_t t = 1; t < series.size(); ++t) {
    out.push_back({series.dates[t], std::log(series.prices[t] / series.prices[t - 1])});
  }
  return out;
}

Sample align_pairs(std::span<const DatedValue> a, std::span<const DatedValue> b) {
  Sample out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].date < b[j].date) {
      ++i;
    } else if (b[j].date < a[i].date) {
      ++j;
    } else {
      out.x.push_back(a[i].value);
      out.y.push_back(b[j].value);
      ++i;
      ++j;
    }
  }
  if (out.size() < 2) {
    throw std::invalid_argument("align_pairs: series share " + std::to_string(out.size()) +
                                " date(s); need at least 2");
  }
  out.provenance = "ingested";
  return out;
}

}  // namespace mibench
