#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace varpol {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  static Date parse(const std::string& iso);  // "YYYY-MM-DD"
  std::string to_string() const;
  auto operator<=>(const Date&) const = default;
};

/// Dated daily closes; strictly increasing dates, all closes > 0.
struct PriceSeries {
  std::vector<Date> dates;
  std::vector<double> closes;
  std::size_t size() const { return closes.size(); }
};

/// Simple returns (P_t - P_{t-1}) / P_{t-1}, dated at the later observation.
struct ReturnSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  std::size_t size() const { return values.size(); }
};

struct WindowSpec {
  std::size_t fit_len = 700;
  std::size_t holdout_len = 50;
  std::size_t terminal_len = 26;
};

struct Windows {
  ReturnSeries fit;
  ReturnSeries holdout;
  ReturnSeries terminal;
  bool terminal_overlaps_holdout = false;
};

/// Validates and sorts by date; rejects duplicates and non-positive closes.
PriceSeries make_price_series(std::vector<Date> dates, std::vector<double> closes);

/// CSV with header "date,close", ISO-8601 dates, one row per trading day.
PriceSeries load_prices(const std::string& path);

ReturnSeries compute_returns(const PriceSeries& prices);

/// fit = first fit_len, holdout = next holdout_len, terminal = last
/// terminal_len observations (may overlap the holdout on short series).
Windows split_windows(const ReturnSeries& returns, const WindowSpec& spec);

}  // namespace varpol
