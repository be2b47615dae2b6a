#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "buyhold/backtest.hpp"

namespace buyhold {

inline constexpr int kSignificantDigits = 12;

// Locale-independent, shortest form with at most 12 significant digits.
std::string format_number(double v);
// v rounded to 12 significant digits; JSON output stores these.
double round_significant(double v);

nlohmann::ordered_json report_json(const BacktestReport& report);
std::string report_csv(const BacktestReport& report);
std::string report_text(const BacktestReport& report);
std::string report_svg(const BacktestReport& report);

struct SweepRow {
  int days;
  double bal;
  double da;
};

std::vector<SweepRow> sweep_ratios(double alpha, double beta, int from, int to);

// Minimal line chart. Each series shares the x positions 0..labels.size()-1.
struct ChartSeries {
  std::string name;
  std::vector<double> values;  // NaN marks a gap
  bool dashed = false;
};

std::string svg_line_chart(const std::string& title, const std::vector<std::string>& x_labels,
                           const std::vector<ChartSeries>& series);

}  // namespace buyhold
