#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "buyhold/market.hpp"
#include "buyhold/report.hpp"

namespace buyhold {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                               kSignificantDigits);
  return std::string(buf, r.ptr);
}

double round_significant(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

nlohmann::ordered_json report_json(const BacktestReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["params"] = {{"alpha", round_significant(report.bounds.alpha)},
                 {"beta", round_significant(report.bounds.beta)}};
  ordered_json windows = ordered_json::array();
  for (const auto& w : report.windows) {
    ordered_json strategies = ordered_json::array();
    ordered_json skipped = ordered_json::array();
    for (const auto& s : w.strategies) {
      if (!s.result) {
        skipped.push_back({{"name", s.name}, {"reason", s.skip_reason}});
        continue;
      }
      ordered_json violations = ordered_json::array();
      for (const auto& v : s.result->violations) {
        violations.push_back({{"day", v.day},
                              {"factor", round_significant(v.factor)},
                              {"low", round_significant(v.low)},
                              {"high", round_significant(v.high)}});
      }
      strategies.push_back({{"name", s.name},
                            {"shares", round_significant(s.result->shares)},
                            {"currency_value", round_significant(s.result->currency_value)},
                            {"realized_ratio", round_significant(s.result->realized_ratio)},
                            {"violations", std::move(violations)}});
    }
    ordered_json row{{"label", w.label}, {"n", w.days}, {"strategies", std::move(strategies)}};
    if (!skipped.empty()) row["skipped"] = std::move(skipped);
    windows.push_back(std::move(row));
  }
  j["windows"] = std::move(windows);
  if (!report.skipped_windows.empty()) j["skipped_windows"] = report.skipped_windows;
  if (report.input_reordered) j["input_reordered"] = true;
  return j;
}

std::string report_csv(const BacktestReport& report) {
  std::ostringstream out;
  out << "label,n,strategy,shares,currency_value,realized_ratio,violations\n";
  for (const auto& r : summary_rows(report)) {
    out << r.label << ',' << r.days << ',' << r.strategy << ',' << format_number(r.shares) << ','
        << format_number(r.currency_value) << ',' << format_number(r.realized_ratio) << ','
        << r.violation_count << '\n';
  }
  return out.str();
}

std::string report_text(const BacktestReport& report) {
  std::ostringstream out;
  out << "alpha " << format_number(report.bounds.alpha) << "  beta "
      << format_number(report.bounds.beta) << '\n';
  for (const auto& w : report.windows) {
    out << w.label << "  n=" << w.days << '\n';
    for (const auto& s : w.strategies) {
      out << "  " << s.name;
      if (!s.result) {
        out << "  skipped: " << s.skip_reason << '\n';
        continue;
      }
      out << "  shares " << format_number(s.result->shares) << "  value "
          << format_number(s.result->currency_value) << "  ratio "
          << format_number(s.result->realized_ratio);
      if (!s.result->violations.empty()) {
        out << "  violations " << s.result->violations.size();
      }
      out << '\n';
    }
  }
  for (const auto& label : report.skipped_windows) {
    out << label << "  skipped: fewer than 2 trading days\n";
  }
  return out.str();
}

std::string report_svg(const BacktestReport& report) {
  std::vector<std::string> labels;
  std::vector<ChartSeries> series;
  for (std::size_t wi = 0; wi < report.windows.size(); ++wi) {
    const auto& w = report.windows[wi];
    labels.push_back(w.label);
    for (const auto& s : w.strategies) {
      auto it = std::find_if(series.begin(), series.end(),
                             [&](const ChartSeries& c) { return c.name == s.name; });
      if (it == series.end()) {
        series.push_back({s.name, std::vector<double>(report.windows.size(),
                                                      std::numeric_limits<double>::quiet_NaN()),
                          s.name == "DA"});
        it = series.end() - 1;
      }
      if (s.result) it->values[wi] = s.result->realized_ratio;
    }
  }
  return svg_line_chart("Realized competitive ratios", labels, series);
}

std::vector<SweepRow> sweep_ratios(double alpha, double beta, int from, int to) {
  if (from < 2 || to < from) throw InvalidArgument("sweep_ratios: need 2 <= from <= to");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(to - from + 1));
  for (int n = from; n <= to; ++n) {
    const MarketParams<double> p(alpha, beta, n);
    rows.push_back({n, bal_ratio(p), da_ratio(p)});
  }
  return rows;
}

}  // namespace buyhold
