#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "buyhold/market.hpp"

namespace buyhold {

using Date = std::chrono::year_month_day;

// Strict ISO-8601 calendar date, YYYY-MM-DD.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);
std::string format_month(const Date& d);  // YYYY-MM

struct PricePoint {
  Date date;
  double close;
};

/// Daily closes with strictly increasing dates and positive prices.
class PriceSeries {
 public:
  PriceSeries() = default;
  // Sorts by date; throws DuplicateDate / NonPositivePrice.
  explicit PriceSeries(std::vector<PricePoint> points);

  const std::vector<PricePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  // True when the input was not already in date order.
  bool reordered() const { return reordered_; }

 private:
  std::vector<PricePoint> points_;
  bool reordered_ = false;
};

/// Reads `date,close` CSV. Rows out of date order are accepted and sorted;
/// PriceSeries::reordered() reports it.
PriceSeries load_prices(std::istream& in);
void write_prices(std::ostream& out, const PriceSeries& series);

/// One investment plan: a contiguous run of trading days.
struct PlanWindow {
  std::string label;
  std::vector<PricePoint> days;

  int size() const { return static_cast<int>(days.size()); }
  Eigen::VectorXd prices() const;
  // Shares per unit of currency, i.e. reciprocal prices. Not normalized.
  Eigen::VectorXd rates() const;
  double last_close() const { return days.back().close; }
};

struct Segmentation {
  std::vector<PlanWindow> windows;
  // Labels of months with fewer than two trading days.
  std::vector<std::string> skipped;
};

Segmentation segment_monthly(const PriceSeries& series);

/// Daily return bounds without a horizon; each window supplies its own n.
struct ReturnBounds {
  double alpha;
  double beta;

  MarketParams<double> for_days(int days) const { return {alpha, beta, days}; }
};

struct Violation {
  int day;  // one-based day in the window; the step is from day-1 to day
  double factor;  // rate ratio e_day / e_{day-1}
  double low;
  double high;
};

struct PlanResult {
  double shares;
  double currency_value;
  double realized_ratio;
  std::vector<Violation> violations;
};

// Produces the weights for a window from its own MarketParams.
using StrategyGenerator = std::function<StaticStrategy<double>(const MarketParams<double>&)>;

struct NamedStrategy {
  std::string name;
  StrategyGenerator make;
};

NamedStrategy bal_strategy();
NamedStrategy da_strategy();
// Fixed weights; windows of any other length are skipped with a reason.
NamedStrategy fixed_strategy(std::string name, Eigen::VectorXd weights);

inline constexpr double kViolationSlack = 1e-9;

std::vector<Violation> find_violations(const PlanWindow& w, const ReturnBounds& bounds,
                                       double relative_slack = kViolationSlack);

PlanResult run_plan(const StrategyGenerator& strategy, const PlanWindow& w,
                    const ReturnBounds& bounds, double relative_slack = kViolationSlack);

struct StrategyOutcome {
  std::string name;
  std::optional<PlanResult> result;
  std::string skip_reason;  // set when result is empty
};

struct WindowReport {
  std::string label;
  int days;
  std::vector<StrategyOutcome> strategies;
};

struct BacktestReport {
  ReturnBounds bounds;
  std::vector<WindowReport> windows;
  std::vector<std::string> skipped_windows;
  bool input_reordered = false;
};

struct SummaryRow {
  std::string label;
  int days;
  std::string strategy;
  double shares;
  double currency_value;
  double realized_ratio;
  std::size_t violation_count;
};

/// Runs every strategy on every monthly window. Per-window failures become
/// annotated skips; the report is never aborted by one window.
BacktestReport compare_report(const PriceSeries& series, const ReturnBounds& bounds,
                              const std::vector<NamedStrategy>& strategies,
                              double relative_slack = kViolationSlack);

std::vector<SummaryRow> summary_rows(const BacktestReport& report);

struct SynthOptions {
  std::uint64_t seed = 1997;
  int months = 12;
  std::chrono::year_month start{std::chrono::year{1997}, std::chrono::January};
  double start_price = 100.0;
};

/// Weekday closes whose daily rate factor is uniform on [1/beta, alpha].
/// Prices are rounded to 12 significant digits so CSV output reloads exactly.
PriceSeries synthesize_prices(const ReturnBounds& bounds, const SynthOptions& options);

}  // namespace buyhold
