#include "varpol/marketdata.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "varpol/errors.hpp"

namespace varpol {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string trim(std::string s) {
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

}  // namespace

Date Date::parse(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
    raise(Errc::malformed_row, "bad date '" + iso + "' (expected YYYY-MM-DD)");
  const std::string y = iso.substr(0, 4), m = iso.substr(5, 2), d = iso.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d))
    raise(Errc::malformed_row, "bad date '" + iso + "'");
  Date out{std::stoi(y), std::stoi(m), std::stoi(d)};
  if (out.month < 1 || out.month > 12 || out.day < 1 || out.day > 31)
    raise(Errc::malformed_row, "date out of range '" + iso + "'");
  return out;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

PriceSeries make_price_series(std::vector<Date> dates, std::vector<double> closes) {
  if (dates.size() != closes.size()) raise(Errc::length_mismatch, "dates/closes size mismatch");
  if (dates.size() < 2) raise(Errc::too_short, "price series needs at least 2 observations");
  std::vector<std::size_t> order(dates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dates[a] < dates[b]; });
  PriceSeries out;
  out.dates.reserve(dates.size());
  out.closes.reserve(closes.size());
  for (std::size_t i : order) {
    if (!(closes[i] > 0.0))
      raise(Errc::non_positive_price, "close " + std::to_string(closes[i]) + " on " + dates[i].to_string());
    if (!out.dates.empty() && !(out.dates.back() < dates[i]))
      raise(Errc::duplicate_date, "duplicate date " + dates[i].to_string());
    out.dates.push_back(dates[i]);
    out.closes.push_back(closes[i]);
  }
  return out;
}

PriceSeries load_prices(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::missing_file, "cannot open " + path);
  std::string line;
  std::vector<Date> dates;
  std::vector<double> closes;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      // tolerate a UTF-8 BOM in front of the header
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      if (trim(line) != "date,close")
        raise(Errc::malformed_row, "line 1: expected header 'date,close'");
      continue;
    }
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      raise(Errc::malformed_row, "line " + std::to_string(lineno) + ": missing value column");
    const std::string date_str = trim(line.substr(0, comma));
    const std::string close_str = trim(line.substr(comma + 1));
    Date d;
    try {
      d = Date::parse(date_str);
    } catch (const Error&) {
      raise(Errc::malformed_row, "line " + std::to_string(lineno) + ": bad date '" + date_str + "'");
    }
    char* end = nullptr;
    const double close = std::strtod(close_str.c_str(), &end);
    if (close_str.empty() || end != close_str.c_str() + close_str.size())
      raise(Errc::malformed_row, "line " + std::to_string(lineno) + ": bad close '" + close_str + "'");
    if (!(close > 0.0))
      raise(Errc::non_positive_price, "line " + std::to_string(lineno) + ": close must be > 0");
    dates.push_back(d);
    closes.push_back(close);
  }
  if (dates.size() < 2) raise(Errc::too_short, path + ": fewer than 2 price rows");
  return make_price_series(std::move(dates), std::move(closes));
}

ReturnSeries compute_returns(const PriceSeries& prices) {
  if (prices.size() < 2) raise(Errc::too_short, "need at least 2 prices to form returns");
  ReturnSeries out;
  out.dates.assign(prices.dates.begin() + 1, prices.dates.end());
  out.values.resize(prices.size() - 1);
  for (std::size_t t = 1; t < prices.size(); ++t)
    out.values[t - 1] = (prices.closes[t] - prices.closes[t - 1]) / prices.closes[t - 1];
  return out;
}

Windows split_windows(const ReturnSeries& returns, const WindowSpec& spec) {
  if (spec.fit_len == 0 || spec.holdout_len == 0 || spec.terminal_len == 0)
    raise(Errc::invalid_value, "window lengths must be positive");
  const std::size_t n = returns.size();
  if (spec.fit_len + spec.holdout_len > n)
    raise(Errc::insufficient_data,
          "need fit_len + holdout_len = " + std::to_string(spec.fit_len + spec.holdout_len) +
              " returns, have " + std::to_string(n));
  if (spec.terminal_len > n)
    raise(Errc::insufficient_data, "terminal window longer than the series");

  auto slice = [&](std::size_t begin, std::size_t len) {
    ReturnSeries s;
    s.dates.assign(returns.dates.begin() + begin, returns.dates.begin() + begin + len);
    s.values.assign(returns.values.begin() + begin, returns.values.begin() + begin + len);
    return s;
  };

  Windows w;
  w.fit = slice(0, spec.fit_len);
  w.holdout = slice(spec.fit_len, spec.holdout_len);
  const std::size_t term_begin = n - spec.terminal_len;
  w.terminal = slice(term_begin, spec.terminal_len);
  w.terminal_overlaps_holdout = term_begin < spec.fit_len + spec.holdout_len;
  return w;
}

}  // namespace varpol
