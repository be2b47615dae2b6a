#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "buyhold/backtest.hpp"
#include "buyhold/errors.hpp"
#include "buyhold/report.hpp"

namespace buyhold {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::string two_digits(unsigned v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  const Date date{std::chrono::year{to_int(y)},
                  std::chrono::month{static_cast<unsigned>(to_int(m))},
                  std::chrono::day{static_cast<unsigned>(to_int(d))}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_month(const Date& d) {
  std::string y = std::to_string(static_cast<int>(d.year()));
  while (y.size() < 4) y.insert(y.begin(), '0');
  return y + "-" + two_digits(static_cast<unsigned>(d.month()));
}

std::string format_date(const Date& d) {
  return format_month(d) + "-" + two_digits(static_cast<unsigned>(d.day()));
}

PriceSeries::PriceSeries(std::vector<PricePoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].close) || !(points_[i].close > 0.0)) {
      throw NonPositivePrice(i + 1, 2, "close price must be positive");
    }
  }
  const auto by_date = [](const PricePoint& a, const PricePoint& b) {
    return std::chrono::sys_days{a.date} < std::chrono::sys_days{b.date};
  };
  reordered_ = !std::is_sorted(points_.begin(), points_.end(), by_date);
  if (reordered_) std::stable_sort(points_.begin(), points_.end(), by_date);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].date == points_[i - 1].date) {
      throw DuplicateDate(i + 1, 1, "duplicate date " + format_date(points_[i].date));
    }
  }
}

PriceSeries load_prices(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  std::vector<PricePoint> points;
  std::vector<std::size_t> rows;

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!have_header) {
      if (line != "date,close") {
        throw ParseError(row, 1, "header must be exactly 'date,close'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;

    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(row, 1, "expected exactly two fields");
    }
    const std::string_view date_text(line.data(), comma);
    const std::string_view close_text(line.data() + comma + 1, line.size() - comma - 1);

    const auto date = parse_date(date_text);
    if (!date) throw ParseError(row, 1, "invalid date '" + std::string(date_text) + "'");

    double close = 0.0;
    const auto [ptr, ec] =
        std::from_chars(close_text.data(), close_text.data() + close_text.size(), close);
    if (ec != std::errc() || ptr != close_text.data() + close_text.size() || close_text.empty() ||
        !std::isfinite(close)) {
      throw ParseError(row, 2, "invalid close '" + std::string(close_text) + "'");
    }
    if (!(close > 0.0)) throw NonPositivePrice(row, 2, "close price must be positive");

    points.push_back({*date, close});
    rows.push_back(row);
  }
  if (!have_header) throw ParseError(1, 1, "empty input; expected header 'date,close'");
  if (points.empty()) throw ParseError(row + 1, 1, "no data rows");

  // Report duplicates against the original row numbers.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::chrono::sys_days{points[a].date} < std::chrono::sys_days{points[b].date};
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k]].date == points[order[k - 1]].date) {
      const std::size_t later = std::max(rows[order[k]], rows[order[k - 1]]);
      throw DuplicateDate(later, 1, "duplicate date " + format_date(points[order[k]].date));
    }
  }
  return PriceSeries(std::move(points));
}

void write_prices(std::ostream& out, const PriceSeries& series) {
  out << "date,close\n";
  for (const auto& p : series.points()) {
    out << format_date(p.date) << ',' << format_number(p.close) << '\n';
  }
}

}  // namespace buyhold
