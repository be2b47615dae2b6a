#include <exception>
#include <string>
#include <utility>

#include "buyhold/backtest.hpp"
#include "buyhold/errors.hpp"

namespace buyhold {

Eigen::VectorXd PlanWindow::prices() const {
  Eigen::VectorXd p(size());
  for (int i = 0; i < size(); ++i) p(i) = days[static_cast<std::size_t>(i)].close;
  return p;
}

Eigen::VectorXd PlanWindow::rates() const { return prices().cwiseInverse(); }

Segmentation segment_monthly(const PriceSeries& series) {
  Segmentation out;
  std::size_t i = 0;
  const auto& pts = series.points();
  while (i < pts.size()) {
    PlanWindow w;
    w.label = format_month(pts[i].date);
    const auto ym = pts[i].date.year() / pts[i].date.month();
    while (i < pts.size() && pts[i].date.year() / pts[i].date.month() == ym) {
      w.days.push_back(pts[i++]);
    }
    if (w.size() < 2) {
      out.skipped.push_back(std::move(w.label));
    } else {
      out.windows.push_back(std::move(w));
    }
  }
  return out;
}

NamedStrategy bal_strategy() {
  return {"BAL", [](const MarketParams<double>& p) { return bal_weights(p); }};
}

NamedStrategy da_strategy() {
  return {"DA", [](const MarketParams<double>& p) { return da_weights<double>(p.days); }};
}

NamedStrategy fixed_strategy(std::string name, Eigen::VectorXd weights) {
  StaticStrategy<double> fixed(std::move(weights));
  return {std::move(name), [fixed](const MarketParams<double>& p) {
            if (fixed.size() != p.days) {
              throw LengthMismatch("strategy has " + std::to_string(fixed.size()) +
                                   " weights but the window has " + std::to_string(p.days) +
                                   " days");
            }
            return fixed;
          }};
}

std::vector<Violation> find_violations(const PlanWindow& w, const ReturnBounds& bounds,
                                       double relative_slack) {
  std::vector<Violation> out;
  const double low = 1.0 / bounds.beta;
  const double high = bounds.alpha;
  for (int i = 1; i < w.size(); ++i) {
    const double factor = w.days[static_cast<std::size_t>(i - 1)].close /
                          w.days[static_cast<std::size_t>(i)].close;
    if (factor < low * (1.0 - relative_slack) || factor > high * (1.0 + relative_slack)) {
      out.push_back({i + 1, factor, low, high});
    }
  }
  return out;
}

PlanResult run_plan(const StrategyGenerator& strategy, const PlanWindow& w,
                    const ReturnBounds& bounds, double relative_slack) {
  const auto params = bounds.for_days(w.size());
  const StaticStrategy<double> s = strategy(params);
  if (s.size() != w.size()) {
    throw LengthMismatch("run_plan: strategy length differs from window length");
  }
  const Eigen::VectorXd rates = w.rates();
  PlanResult r;
  r.shares = s.weights().dot(rates);
  r.currency_value = r.shares * w.last_close();
  r.realized_ratio = rates.maxCoeff() / r.shares;
  r.violations = find_violations(w, bounds, relative_slack);
  return r;
}

BacktestReport compare_report(const PriceSeries& series, const ReturnBounds& bounds,
                              const std::vector<NamedStrategy>& strategies,
                              double relative_slack) {
  if (strategies.empty()) throw InvalidArgument("compare_report: no strategies given");
  (void)bounds.for_days(2);  // validates alpha and beta

  BacktestReport report{bounds, {}, {}, series.reordered()};
  if (series.empty()) return report;
  auto seg = segment_monthly(series);
  report.skipped_windows = std::move(seg.skipped);
  for (const auto& w : seg.windows) {
    WindowReport row{w.label, w.size(), {}};
    for (const auto& s : strategies) {
      StrategyOutcome outcome{s.name, std::nullopt, {}};
      try {
        outcome.result = run_plan(s.make, w, bounds, relative_slack);
      } catch (const std::exception& e) {
        outcome.skip_reason = e.what();
      }
      row.strategies.push_back(std::move(outcome));
    }
    report.windows.push_back(std::move(row));
  }
  return report;
}

std::vector<SummaryRow> summary_rows(const BacktestReport& report) {
  std::vector<SummaryRow> rows;
  for (const auto& w : report.windows) {
    for (const auto& s : w.strategies) {
      if (!s.result) continue;
      rows.push_back({w.label, w.days, s.name, s.result->shares, s.result->currency_value,
                      s.result->realized_ratio, s.result->violations.size()});
    }
  }
  return rows;
}

}  // namespace buyhold
